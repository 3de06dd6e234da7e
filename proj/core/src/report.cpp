#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "obtk/format.hpp"
#include "obtk/rng.hpp"
#include "obtk/verify.hpp"

namespace obtk {

std::size_t VerificationReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const Trial& t) { return !t.pass; }));
}

std::vector<std::size_t> VerificationReport::witnesses() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (!trials[i].pass) out.push_back(i);
  }
  return out;
}

double VerificationReport::min_ratio() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : trials) {
    if (std::isfinite(t.ratio)) m = std::min(m, t.ratio);
  }
  return m;
}

double VerificationReport::max_ratio() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : trials) {
    if (std::isfinite(t.ratio)) m = std::max(m, t.ratio);
  }
  return m;
}

std::optional<double> VerificationReport::constant(const std::string& name) const {
  for (const auto& [k, v] : constants) {
    if (k == name) return v;
  }
  return std::nullopt;
}

const Series* VerificationReport::find_series(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string VerificationReport::table(char sep) const {
  std::vector<std::string> names;
  for (const auto& t : trials) {
    for (const auto& [k, v] : t.params) {
      if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
    }
  }
  std::ostringstream os;
  os << "experiment" << sep << "trial" << sep << "split" << sep << "label";
  for (const auto& n : names) os << sep << n;
  os << sep << "lhs" << sep << "rhs" << sep << "ratio" << sep << "pass\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& t = trials[i];
    os << experiment << sep << i << sep << t.split << sep << quote_cell(t.label, sep);
    for (const auto& n : names) {
      os << sep;
      for (const auto& [k, v] : t.params) {
        if (k == n) {
          os << format_csv(v);
          break;
        }
      }
    }
    os << sep << format_csv(t.lhs) << sep << format_csv(t.rhs) << sep << format_csv(t.ratio)
       << sep << (t.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << "experiment=" << experiment << " pass=" << (pass() ? "true" : "false")
     << " trials=" << trials.size() << " violations=" << violations()
     << " min_ratio=" << format_csv(min_ratio()) << " max_ratio=" << format_csv(max_ratio())
     << "\n";
  for (const auto& [k, v] : parameters) os << "  param " << k << "=" << v << "\n";
  for (const auto& [k, v] : constants) os << "  constant " << k << "=" << format_csv(v) << "\n";
  for (const auto& s : series) {
    os << "  series " << s.name << " slope=" << format_csv(s.slope) << " points=" << s.x.size()
       << "\n";
  }
  for (std::size_t i : witnesses()) {
    os << "  witness trial=" << i << " " << trials[i].label
       << " ratio=" << format_csv(trials[i].ratio) << "\n";
  }
  for (const auto& n : notes) os << "  note " << n << "\n";
  os << "  runtime_seconds=" << format_csv(runtime_seconds) << "\n";
  return os.str();
}

std::string VerificationReport::series_data(const Series& s, char sep) const {
  std::ostringstream os;
  os << s.x_label << sep << s.y_label << "\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    os << format_csv(s.x[i]) << sep << format_csv(s.y[i]) << "\n";
  }
  return os.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

std::vector<bool> train_split(std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  // Fisher-Yates with the toolkit generator keeps the split platform independent.
  for (std::size_t i = count; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.next_u64() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  std::vector<bool> train(count, false);
  for (std::size_t k = 0; k < count / 2 + count % 2; ++k) train[idx[k]] = true;
  return train;
}

}  // namespace obtk
