#pragma once

#include <string>

#include "torusct/analysis.hpp"

namespace torusct {

// All text formats round-trip at 17 significant digits. Sidecar metadata for a
// file F lives in F + ".json".

std::string format_g17(double v);

void write_directions_csv(const std::string& path, const DirectionSet& s);
DirectionSet read_directions_csv(const std::string& path);

void write_samples_csv(const std::string& path, const GeodesicSamples& d);
GeodesicSamples read_samples_csv(const std::string& path);

void write_sinogram_csv(const std::string& path, const EuclideanSinogram& s);
EuclideanSinogram read_sinogram_csv(const std::string& path);

void write_table_csv(const std::string& path, const FourierTable& t);  // + sidecar {r, real_flag}
FourierTable read_table_csv(const std::string& path);

// 16-bit binary PGM, values linearly mapped from [min, max]; min, max, n go to
// the sidecar so the exact affine map survives. Deliberately quantized.
void write_pgm16(const std::string& path, const PixelPhantom& p,
                 const std::string& extra_json = "");
PixelPhantom read_pgm16(const std::string& path);

// Flat CSV of cell centers: x,y,value.
void write_raster_csv(const std::string& path, const PixelPhantom& p);
PixelPhantom read_raster_csv(const std::string& path);

}  // namespace torusct
