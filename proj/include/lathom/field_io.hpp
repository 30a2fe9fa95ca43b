#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lathom/lattice.hpp"

namespace lathom {

/// Shared field dump format: one header line
///   #pattern <d> <row-major integer entries of M>
/// then one CSV record per point in pattern order:
/// lambda indices, point coordinates (decimals), value components.
/// UTF-8, LF line endings.
void write_field_dump(std::ostream& os, const Pattern& p, const std::vector<double>& values,
                      int ncomp);
void write_field_dump(const std::string& path, const Pattern& p, const std::vector<double>& values,
                      int ncomp);

/// A parsed field dump; the pattern can be rebuilt from the matrix.
struct FieldDump {
  IMat matrix;
  int ncomp = 0;
  std::vector<double> values;  // component-major, like the in-memory fields
};

FieldDump read_field_dump(std::istream& is);
FieldDump read_field_dump(const std::string& path);

/// Residual history as `iteration,residual` rows.
void write_residuals_csv(const std::string& path, const std::vector<double>& residuals);

void write_text_file(const std::string& path, const std::string& content);

/// Render one component of a field on a raster of the unit cell as an 8-bit
/// binary portable graymap, each pixel taking the value of the nearest
/// lattice point; the component range is normalized to 0..255 and recorded
/// in a sidecar text file next to the image.  Works for planar patterns
/// (d = 2, or d = 3 sampled with a single x3 point).
void write_component_pgm(const std::string& path, const Pattern& p,
                         const std::vector<double>& values, int ncomp, int comp, int width,
                         int height);

}  // namespace lathom
