#include "lomo/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lomo {

const char* to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::ball_indicator: return "ball_indicator";
    case CorpusKind::ball_union: return "ball_union";
    case CorpusKind::radial_profile: return "radial_profile";
    case CorpusKind::fourier_mode: return "fourier_mode";
    case CorpusKind::band_limited: return "band_limited";
    case CorpusKind::spike_plateau: return "spike_plateau";
  }
  return "unknown";
}

GridFunction CorpusEntry::sample(const Domain& domain) const { return lomo::sample(domain, evaluate); }

namespace {

double norm2(const Point& x, const Point& c, int dim) {
  double acc = 0.0;
  for (int d = 0; d < dim; ++d) acc += (x[d] - c[d]) * (x[d] - c[d]);
  return acc;
}

bool in_half_box(const Point& x, double side, int dim) {
  for (int d = 0; d < dim; ++d) {
    if (x[d] < -0.25 * side || x[d] >= 0.25 * side) return false;
  }
  return true;
}

double bump(double s2) { return s2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s2)) : 0.0; }

class Sampler {
 public:
  Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Center such that a ball of radius rho stays inside the central half-box.
  Point center(double rho, double side, int dim) {
    Point c{0.0, 0.0, 0.0};
    const double reach = 0.25 * side - rho;
    for (int d = 0; d < dim; ++d) c[d] = reach > 0.0 ? uniform(-reach, reach) : 0.0;
    return c;
  }

 private:
  std::mt19937_64 rng_;
};

std::function<double(const Point&)> indicator(Point c, double rho, int dim, double height = 1.0) {
  return [=](const Point& x) { return norm2(x, c, dim) < rho * rho ? height : 0.0; };
}

}  // namespace

std::vector<RadialProfile> radial_battery(int dim, double side) {
  const double T = 0.9 * unit_ball_volume(dim) * std::pow(0.25 * side, dim);
  std::vector<RadialProfile> out;
  out.push_back({"step", T, [](double) { return 1.0; }});
  out.push_back({"short_step", T / 8, [](double) { return 1.0; }});
  out.push_back({"two_step", T, [T](double t) { return t < T / 4 ? 2.0 : 1.0; }});
  out.push_back({"staircase", T, [T](double t) { return t < T / 9 ? 3.0 : (t < T / 3 ? 2.0 : 1.0); }});
  for (double a : {0.3, 0.6, 0.9}) {
    const double t0 = T / 50;
    out.push_back({"power_" + std::to_string(a).substr(0, 3), T,
                   [a, t0](double t) { return t < t0 ? 1.0 : std::pow(t / t0, -a); }});
  }
  out.push_back({"exponential", T, [T](double t) { return std::exp(-5.0 * t / T); }});
  out.push_back({"gaussian", T, [T](double t) { return std::exp(-9.0 * (t / T) * (t / T)); }});
  out.push_back({"ramp", T, [T](double t) { return 1.0 - t / T; }});
  out.push_back({"plateau_ramp", T, [T](double t) { return t < T / 2 ? 1.0 : 2.0 * (1.0 - t / T); }});
  out.push_back({"log", T, [T](double t) {
                   const double t0 = T / 100;
                   return std::log(T / std::max(t, t0));
                 }});
  return out;
}

CorpusEntry radial_entry(const RadialProfile& profile, int dim) {
  const double omega = unit_ball_volume(dim);
  CorpusEntry e;
  e.label = "radial:" + profile.name;
  e.kind = CorpusKind::radial_profile;
  e.profile = profile;
  e.evaluate = [profile, omega, dim](const Point& x) {
    const double r = std::sqrt(norm2(x, Point{0.0, 0.0, 0.0}, dim));
    return profile(omega * std::pow(r, dim));
  };
  return e;
}

std::vector<CorpusEntry> generate_corpus(int dim, double side, std::uint64_t seed, std::size_t count) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("generate_corpus: dim must be 1, 2 or 3");
  Sampler rng(seed);
  const auto battery = radial_battery(dim, side);
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    CorpusEntry e;
    e.kind = static_cast<CorpusKind>(i % 6);
    e.label = std::string(to_string(e.kind)) + "#" + std::to_string(i);
    switch (e.kind) {
      case CorpusKind::ball_indicator: {
        const double rho = rng.uniform(side / 32, side / 8);
        e.evaluate = indicator(rng.center(rho, side, dim), rho, dim);
        break;
      }
      case CorpusKind::ball_union: {
        std::vector<std::function<double(const Point&)>> parts;
        const int pieces = rng.integer(2, 3);
        for (int k = 0; k < pieces; ++k) {
          const double rho = rng.uniform(side / 40, side / 12);
          parts.push_back(indicator(rng.center(rho, side, dim), rho, dim));
        }
        e.evaluate = [parts](const Point& x) {
          double v = 0.0;
          for (const auto& part : parts) v = std::max(v, part(x));
          return v;
        };
        break;
      }
      case CorpusKind::radial_profile: {
        const auto& shape = battery[static_cast<std::size_t>(rng.integer(0, static_cast<int>(battery.size()) - 1))];
        const double height = rng.uniform(0.5, 2.0);
        CorpusEntry radial = radial_entry(shape, dim);
        e.profile = shape;
        e.evaluate = [radial, height](const Point& x) { return height * radial.evaluate(x); };
        e.label += ":" + shape.name;
        break;
      }
      case CorpusKind::fourier_mode: {
        std::array<int, 3> k{0, 0, 0};
        for (int d = 0; d < dim; ++d) k[d] = rng.integer(1, 4);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        e.evaluate = [=](const Point& x) {
          if (!in_half_box(x, side, dim)) return 0.0;
          double arg = phase;
          for (int d = 0; d < dim; ++d) arg += 2.0 * std::numbers::pi * k[d] * x[d] / side;
          return std::cos(arg);
        };
        break;
      }
      case CorpusKind::band_limited: {
        struct Mode {
          std::array<int, 3> k;
          double amplitude;
          double phase;
        };
        std::vector<Mode> modes(4);
        for (auto& m : modes) {
          m.k = {0, 0, 0};
          for (int d = 0; d < dim; ++d) m.k[d] = rng.integer(-6, 6);
          m.amplitude = rng.uniform(-1.0, 1.0);
          m.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        const double rho = 0.25 * side;
        e.smooth = true;
        e.evaluate = [=](const Point& x) {
          const double w = bump(norm2(x, Point{0.0, 0.0, 0.0}, dim) / (rho * rho));
          if (w == 0.0) return 0.0;
          double acc = 0.0;
          for (const auto& m : modes) {
            double arg = m.phase;
            for (int d = 0; d < dim; ++d) arg += 2.0 * std::numbers::pi * m.k[d] * x[d] / side;
            acc += m.amplitude * std::cos(arg);
          }
          return w * acc;
        };
        break;
      }
      case CorpusKind::spike_plateau: {
        const double rho = rng.uniform(side / 16, side / 8);
        const Point c = rng.center(rho, side, dim);
        const double spike_rho = rho / 8;
        Point spike = c;
        for (int d = 0; d < dim; ++d) spike[d] += rng.uniform(-0.5 * rho, 0.5 * rho);
        const double height = rng.uniform(3.0, 8.0);
        e.evaluate = [=](const Point& x) {
          double v = norm2(x, c, dim) < rho * rho ? 1.0 : 0.0;
          if (norm2(x, spike, dim) < spike_rho * spike_rho) v += height;
          return v;
        };
        break;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> generate_smooth_corpus(int dim, double side, std::uint64_t seed, std::size_t count) {
  Sampler rng(seed);
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    CorpusEntry e;
    e.smooth = true;
    const double rho = rng.uniform(side / 12, side / 6);
    const Point c = rng.center(rho, side, dim);
    if (i % 2 == 0) {
      e.kind = CorpusKind::radial_profile;
      e.label = "smooth_bump#" + std::to_string(i);
      const double height = rng.uniform(0.5, 2.0);
      e.evaluate = [=](const Point& x) { return height * bump(norm2(x, c, dim) / (rho * rho)); };
    } else {
      e.kind = CorpusKind::band_limited;
      e.label = "windowed_mode#" + std::to_string(i);
      std::array<int, 3> k{0, 0, 0};
      for (int d = 0; d < dim; ++d) k[d] = rng.integer(1, 5);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      e.evaluate = [=](const Point& x) {
        const double w = bump(norm2(x, c, dim) / (rho * rho));
        if (w == 0.0) return 0.0;
        double arg = phase;
        for (int d = 0; d < dim; ++d) arg += 2.0 * std::numbers::pi * k[d] * x[d] / side;
        return w * std::cos(arg);
      };
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace lomo
