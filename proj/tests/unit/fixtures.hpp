#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/paths.hpp"
#include "jlpath/weight.hpp"

#include <string>
#include <vector>

namespace fx {

inline const jlpath::CartanDatum& a1() {
  static const auto d = jlpath::CartanDatum::validate({{2}});
  return d;
}
inline const jlpath::CartanDatum& a2() {
  static const auto d = jlpath::CartanDatum::validate({{2, -1}, {-1, 2}});
  return d;
}
inline const jlpath::CartanDatum& rank1_imag() {
  static const auto d = jlpath::CartanDatum::validate({{-2}});
  return d;
}
inline const jlpath::CartanDatum& gkm2() {
  static const auto d = jlpath::CartanDatum::validate({{2, -1}, {-2, -4}}, {"1", "2"});
  return d;
}
// One real and one imaginary index that do not interact.
inline const jlpath::CartanDatum& split() {
  static const auto d = jlpath::CartanDatum::validate({{2, 0}, {0, -2}});
  return d;
}

inline jlpath::Weight w(std::vector<long> evals) { return jlpath::Weight::from_evals(evals); }

inline jlpath::RationalPath straight(std::vector<long> evals) {
  return jlpath::RationalPath::straight(w(std::move(evals)));
}

inline std::string data_file(const std::string& name) { return std::string(JLPATH_DATA_DIR) + "/" + name; }

}  // namespace fx
