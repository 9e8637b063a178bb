#include "kvtk/eye.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kvtk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

EyePoint EyePoint::interior_at(std::complex<double> q) {
  EyePoint p;
  p.chart = EyeChart::interior;
  p.q = q;
  p.validate();
  return p;
}

EyePoint EyePoint::upper_lid(double theta) {
  EyePoint p;
  p.chart = EyeChart::upper_lid;
  p.param = theta;
  p.validate();
  return p;
}

EyePoint EyePoint::lower_lid(double theta) {
  EyePoint p;
  p.chart = EyeChart::lower_lid;
  p.param = theta;
  p.validate();
  return p;
}

EyePoint EyePoint::iris(double angle) {
  EyePoint p;
  p.chart = EyeChart::iris;
  p.param = angle;
  p.validate();
  return p;
}

EyePoint EyePoint::corner_10() {
  EyePoint p;
  p.chart = EyeChart::corner_10;
  return p;
}

void EyePoint::validate() const {
  switch (chart) {
    case EyeChart::interior:
      if (!(q.imag() > 0.0))
        throw std::invalid_argument("EyePoint: interior q must lie in H");
      if (std::abs(q - std::complex<double>(0.0, 1.0)) < 1e-12)
        throw std::invalid_argument(
            "EyePoint: interior q collides with the pinned point i; "
            "use the iris chart");
      break;
    case EyeChart::upper_lid:
    case EyeChart::lower_lid:
      if (!(param >= 0.0 && param <= kPi))
        throw std::invalid_argument("EyePoint: lid theta outside [0, pi]");
      break;
    case EyeChart::iris:
      if (!(param >= 0.0 && param < 2.0 * kPi))
        throw std::invalid_argument("EyePoint: iris angle outside [0, 2pi)");
      break;
    case EyeChart::corner_01:
    case EyeChart::corner_10:
      break;
  }
}

std::pair<std::complex<double>, std::complex<double>> EyePoint::pinned_points()
    const {
  using C = std::complex<double>;
  switch (chart) {
    case EyeChart::interior:
      return {C(0.0, 1.0), q};
    case EyeChart::upper_lid:
      return {C(0.0, 0.0), std::polar(1.0, param)};
    case EyeChart::lower_lid:
      return {-std::polar(1.0, -param), C(0.0, 0.0)};
    case EyeChart::iris:
      return {C(0.0, 1.0), C(0.0, 1.0)};
    case EyeChart::corner_01:
      return {C(0.0, 0.0), C(1.0, 0.0)};
    case EyeChart::corner_10:
      return {C(0.0, 0.0), C(-1.0, 0.0)};
  }
  throw std::logic_error("EyePoint: bad chart");
}

EyePoint EyePoint::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  auto need_arg = [&]() {
    if (arg.empty())
      throw std::invalid_argument("EyePoint: chart '" + name +
                                  "' needs a parameter");
  };
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("EyePoint: bad number '" + s + "'");
    }
    if (used != s.size())
      throw std::invalid_argument("EyePoint: bad number '" + s + "'");
    return v;
  };
  if (name == "corner_01") return corner_01();
  if (name == "corner_10") return corner_10();
  if (name == "upper_lid") {
    need_arg();
    return upper_lid(to_double(arg));
  }
  if (name == "lower_lid") {
    need_arg();
    return lower_lid(to_double(arg));
  }
  if (name == "iris") {
    need_arg();
    return iris(to_double(arg));
  }
  if (name == "interior") {
    need_arg();
    const auto comma = arg.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("EyePoint: interior wants 're,im'");
    return interior_at({to_double(arg.substr(0, comma)),
                        to_double(arg.substr(comma + 1))});
  }
  throw std::invalid_argument("EyePoint: unknown chart '" + name + "'");
}

std::string EyePoint::str() const {
  std::ostringstream os;
  switch (chart) {
    case EyeChart::interior:
      os << "interior:" << q.real() << "," << q.imag();
      break;
    case EyeChart::upper_lid:
      os << "upper_lid:" << param;
      break;
    case EyeChart::lower_lid:
      os << "lower_lid:" << param;
      break;
    case EyeChart::iris:
      os << "iris:" << param;
      break;
    case EyeChart::corner_01:
      os << "corner_01";
      break;
    case EyeChart::corner_10:
      os << "corner_10";
      break;
  }
  return os.str();
}

}  // namespace kvtk
