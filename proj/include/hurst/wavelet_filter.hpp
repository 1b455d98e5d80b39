#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "hurst/error.hpp"

namespace hurst {

/// Orthonormal two-channel filter pair. The highpass is the quadrature mirror
/// of the lowpass: g[k] = (-1)^k h[L-1-k].
class WaveletFilter {
 public:
  WaveletFilter(std::string name, std::vector<double> lowpass)
      : name_(std::move(name)), lowpass_(std::move(lowpass)) {
    require(lowpass_.size() >= 2 && lowpass_.size() % 2 == 0,
            "wavelet lowpass must have even length >= 2");
    const std::size_t L = lowpass_.size();
    highpass_.resize(L);
    for (std::size_t k = 0; k < L; ++k) {
      highpass_[k] = (k % 2 == 0 ? 1.0 : -1.0) * lowpass_[L - 1 - k];
    }
  }

  const std::string& name() const noexcept { return name_; }
  std::span<const double> lowpass() const noexcept { return lowpass_; }
  std::span<const double> highpass() const noexcept { return highpass_; }
  std::size_t length() const noexcept { return lowpass_.size(); }
  int vanishing_moments() const noexcept { return static_cast<int>(lowpass_.size() / 2); }

 private:
  std::string name_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

namespace detail {

// Daubechies extremal-phase scaling filters, db2..db8.
inline const std::vector<std::vector<double>>& daubechies_table() {
  static const std::vector<std::vector<double>> table = {
      {0.48296291314453416, 0.83651630373780794, 0.22414386804201339, -0.12940952255126037},
      {0.33267055295008263, 0.80689150931109255, 0.45987750211849154, -0.13501102001025458,
       -0.085441273882026658, 0.035226291885709533},
      {0.23037781330889651, 0.71484657055291567, 0.63088076792985892, -0.027983769416859854,
       -0.18703481171909309, 0.030841381835560764, 0.032883011666885197,
       -0.010597401785069032},
      {0.16010239797419293, 0.60382926979718965, 0.72430852843777294, 0.13842814590132074,
       -0.24229488706638203, -0.032244869584638375, 0.077571493840045719,
       -0.0062414902127982744, -0.012580751999081999, 0.0033357252854737712},
      {0.11154074335010947, 0.49462389039845306, 0.75113390802109536, 0.31525035170919763,
       -0.22626469396543983, -0.12976686756726194, 0.097501605587323043,
       0.027522865530305727, -0.03158203931748603, 0.00055384220116149613,
       0.0047772575109455108, -0.0010773010853084796},
      {0.077852054085009184, 0.39653931948191729, 0.72913209084623509, 0.46978228740519312,
       -0.14390600392856498, -0.22403618499387498, 0.071309219266830259,
       0.080612609151083078, -0.038029936935014413, -0.016574541630666881,
       0.01255099855609984, 0.00042957797292136651, -0.0018016407040474908,
       0.00035371379997452024},
      {0.054415842243104008, 0.31287159091429995, 0.67563073629728976, 0.58535468365420673,
       -0.015829105256349306, -0.28401554296154691, 0.00047248457391328279,
       0.12874742662047847, -0.017369301001807547, -0.044088253930794755,
       0.013981027917398282, 0.0087460940474057766, -0.0048703529934515741,
       -0.00039174037337694705, 0.00067544940645056933, -0.00011747678412476953},
  };
  return table;
}

}  // namespace detail

inline WaveletFilter haar_filter() {
  const double r = 1.0 / std::sqrt(2.0);
  return WaveletFilter("haar", {r, r});
}

/// Names accepted: "haar" (alias "db1") and "db2".."db8".
inline WaveletFilter make_wavelet_filter(const std::string& name) {
  if (name == "haar" || name == "db1") return haar_filter();
  if (name.size() == 3 && name[0] == 'd' && name[1] == 'b' && name[2] >= '2' && name[2] <= '8') {
    const int order = name[2] - '0';
    return WaveletFilter(name, detail::daubechies_table()[order - 2]);
  }
  fail(ErrorKind::invalid_argument, "unknown wavelet '" + name + "' (expected haar, db1..db8)");
}

inline std::vector<std::string> supported_wavelets() {
  return {"haar", "db2", "db3", "db4", "db5", "db6", "db7", "db8"};
}

}  // namespace hurst
