#pragma once

#include <map>

#include "qhgeo/domain.hpp"

namespace qhgeo {

// A named domain generator with kind-specific parameters and the expected
// classification tags (yes / no / unknown / degrading-with-N).
struct Preset {
  std::string kind;
  std::map<std::string, double> params;
  std::map<std::string, std::string> tags;
};

namespace detail {

inline double preset_param(const std::map<std::string, double>& params, const std::string& key,
                           double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

inline std::vector<Point> regular_polygon(int n, double radius) {
  require(n >= 8 && n <= 65536, errc::invalid_params, "vertex count out of range");
  require(radius > 0.0, errc::invalid_params, "radius must be positive");
  std::vector<Point> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    v.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return v;
}

}  // namespace detail

inline Preset make_preset(const std::string& kind, std::map<std::string, double> params = {}) {
  Preset p;
  p.kind = kind;
  p.params = std::move(params);
  auto def = [&](const std::string& key, double v) {
    if (!p.params.count(key)) p.params[key] = v;
  };
  if (kind == "disk") {
    def("vertices", 512);
    def("radius", 1.0);
    p.tags = {{"john", "yes"}, {"uniform", "yes"}, {"quasiconvex", "yes"}, {"hyperbolic", "yes"}};
  } else if (kind == "square") {
    def("side", 1.0);
    p.tags = {{"john", "yes"}, {"uniform", "yes"}, {"quasiconvex", "yes"}, {"hyperbolic", "yes"}};
  } else if (kind == "slit_disk") {
    def("vertices", 512);
    def("radius", 1.0);
    def("slit_len", 0.95);
    p.tags = {{"john", "yes"}, {"uniform", "no"}, {"quasiconvex", "no"}, {"hyperbolic", "yes"}};
  } else if (kind == "l_shape") {
    def("size", 1.0);
    def("notch", 0.5);
    p.tags = {{"john", "yes"}, {"uniform", "yes"}, {"quasiconvex", "yes"}, {"hyperbolic", "yes"}};
  } else if (kind == "comb") {
    def("teeth", 8);
    def("tooth_depth", 0.6);
    p.tags = {{"john", "degrading-with-N"},
              {"uniform", "degrading-with-N"},
              {"quasiconvex", "degrading-with-N"},
              {"hyperbolic", "yes"}};
  } else if (kind == "rooms_corridor") {
    def("corridor_width", 0.06);
    p.tags = {{"john", "yes"}, {"uniform", "yes"}, {"quasiconvex", "yes"}, {"hyperbolic", "yes"}};
  } else if (kind == "annulus_sector") {
    def("r_in", 0.4);
    def("r_out", 1.0);
    def("angle_deg", 270.0);
    def("vertices", 256);
    p.tags = {{"john", "yes"}, {"uniform", "yes"}, {"quasiconvex", "yes"}, {"hyperbolic", "yes"}};
  } else {
    fail(errc::config_parse, "unknown preset '" + kind + "'");
  }
  return p;
}

inline Domain generate_domain(const Preset& preset) {
  const auto& pp = preset.params;
  using detail::preset_param;
  if (preset.kind == "disk") {
    return Domain("disk", detail::regular_polygon(static_cast<int>(preset_param(pp, "vertices", 512)),
                                                  preset_param(pp, "radius", 1.0)));
  }
  if (preset.kind == "square") {
    const double s = preset_param(pp, "side", 1.0);
    require(s > 0.0, errc::invalid_params, "side must be positive");
    return Domain("square", {{0, 0}, {s, 0}, {s, s}, {0, s}});
  }
  if (preset.kind == "slit_disk") {
    const double radius = preset_param(pp, "radius", 1.0);
    const double slit = preset_param(pp, "slit_len", 0.95);
    require(slit > 0.0 && slit < radius, errc::invalid_params, "slit_len must be in (0, radius)");
    auto outer = detail::regular_polygon(static_cast<int>(preset_param(pp, "vertices", 512)), radius);
    return Domain("slit_disk", std::move(outer), {}, {{{0.0, 0.0}, {slit, 0.0}}});
  }
  if (preset.kind == "l_shape") {
    const double s = preset_param(pp, "size", 1.0);
    const double n = preset_param(pp, "notch", 0.5);
    require(s > 0.0 && n > 0.0 && n < s, errc::invalid_params, "need 0 < notch < size");
    return Domain("l_shape", {{0, 0}, {s, 0}, {s, s - n}, {s - n, s - n}, {s - n, s}, {0, s}});
  }
  if (preset.kind == "comb") {
    const int teeth = static_cast<int>(preset_param(pp, "teeth", 8));
    const double depth = preset_param(pp, "tooth_depth", 0.6);
    require(teeth >= 1 && teeth <= 256, errc::invalid_params, "teeth must be in [1,256]");
    require(depth > 0.0 && depth < 1.0, errc::invalid_params, "tooth_depth must be in (0,1)");
    const double base_top = 1.0 - depth;
    std::vector<Point> v;
    v.push_back({0, 0});
    v.push_back({1, 0});
    v.push_back({1, base_top});
    for (int i = teeth - 1; i >= 0; --i) {
      const double l = (i + 0.25) / teeth, r = (i + 0.75) / teeth;
      v.push_back({r, base_top});
      v.push_back({r, 1.0});
      v.push_back({l, 1.0});
      v.push_back({l, base_top});
    }
    v.push_back({0, base_top});
    return Domain("comb" + std::to_string(teeth), std::move(v));
  }
  if (preset.kind == "rooms_corridor") {
    const double w = preset_param(pp, "corridor_width", 0.06);
    require(w > 0.0 && w < 0.9, errc::invalid_params, "corridor_width must be in (0, 0.9)");
    const double lo = 0.5 - w / 2.0, hi = 0.5 + w / 2.0;
    return Domain("rooms_corridor", {{0, 0},
                                     {1, 0},
                                     {1, lo},
                                     {2, lo},
                                     {2, 0},
                                     {3, 0},
                                     {3, 1},
                                     {2, 1},
                                     {2, hi},
                                     {1, hi},
                                     {1, 1},
                                     {0, 1}});
  }
  if (preset.kind == "annulus_sector") {
    const double r_in = preset_param(pp, "r_in", 0.4);
    const double r_out = preset_param(pp, "r_out", 1.0);
    const double angle = preset_param(pp, "angle_deg", 270.0) * M_PI / 180.0;
    const int n = static_cast<int>(preset_param(pp, "vertices", 256));
    require(0.0 < r_in && r_in < r_out, errc::invalid_params, "need 0 < r_in < r_out");
    require(angle > 0.1 && angle < 2.0 * M_PI - 0.05, errc::invalid_params,
            "angle_deg must stay short of a full turn");
    require(n >= 16 && n <= 65536, errc::invalid_params, "vertex count out of range");
    const int arc_n = std::max(8, static_cast<int>(n * angle / (2.0 * M_PI)));
    std::vector<Point> v;
    for (int i = 0; i <= arc_n; ++i) {
      const double a = angle * i / arc_n;
      v.push_back({r_out * std::cos(a), r_out * std::sin(a)});
    }
    for (int i = arc_n; i >= 0; --i) {
      const double a = angle * i / arc_n;
      v.push_back({r_in * std::cos(a), r_in * std::sin(a)});
    }
    return Domain("annulus_sector", std::move(v));
  }
  fail(errc::config_parse, "unknown preset '" + preset.kind + "'");
}

inline Domain generate_domain(const std::string& kind, std::map<std::string, double> params = {}) {
  return generate_domain(make_preset(kind, std::move(params)));
}

}  // namespace qhgeo
