#include "mero/cli/config.hpp"

#include <cstdio>

#include "mero/error.hpp"

namespace mero::cli {

namespace {

[[noreturn]] void type_error(const std::string& name, const char* expected) {
  throw UsageError("config key '" + name + "': expected " + expected);
}

double as_real(const Json& v, const std::string& name) {
  if (!v.is_number()) type_error(name, "a number");
  return v.get<double>();
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json rect_json(const Rect& r) { return Json::array({r.re_min, r.re_max, r.im_min, r.im_max}); }

}  // namespace

Complex parse_complex(const Json& value, const std::string& name) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  type_error(name, "a number or an [re, im] pair");
}

Params::Params(const Json& object, std::string path) : object_(object), path_(std::move(path)) {
  if (!object_.is_object()) {
    throw UsageError(path_.empty() ? "configuration must be a JSON object"
                                   : "config key '" + path_ + "': expected an object");
  }
}

std::string Params::name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool Params::has(const std::string& key) const { return object_.contains(key); }

const Json* Params::lookup(const std::string& key) {
  seen_.insert(key);
  const auto it = object_.find(key);
  return it == object_.end() ? nullptr : &*it;
}

int Params::integer(const std::string& key, std::optional<int> fallback) {
  const Json* v = lookup(key);
  int out = 0;
  if (v == nullptr) {
    if (!fallback) throw UsageError("missing required config key '" + name(key) + "'");
    out = *fallback;
  } else {
    if (!v->is_number_integer()) type_error(name(key), "an integer");
    const auto wide = v->get<long long>();
    if (wide < -2147483647LL || wide > 2147483647LL) type_error(name(key), "an integer in int range");
    out = static_cast<int>(wide);
  }
  resolved_[key] = out;
  return out;
}

double Params::real(const std::string& key, std::optional<double> fallback) {
  const Json* v = lookup(key);
  double out = 0.0;
  if (v == nullptr) {
    if (!fallback) throw UsageError("missing required config key '" + name(key) + "'");
    out = *fallback;
  } else {
    out = as_real(*v, name(key));
  }
  resolved_[key] = out;
  return out;
}

std::string Params::text(const std::string& key, std::optional<std::string> fallback) {
  const Json* v = lookup(key);
  std::string out;
  if (v == nullptr) {
    if (!fallback) throw UsageError("missing required config key '" + name(key) + "'");
    out = *fallback;
  } else {
    if (!v->is_string()) type_error(name(key), "a string");
    out = v->get<std::string>();
  }
  resolved_[key] = out;
  return out;
}

Complex Params::complex(const std::string& key, std::optional<Complex> fallback) {
  const Json* v = lookup(key);
  Complex out;
  if (v == nullptr) {
    if (!fallback) throw UsageError("missing required config key '" + name(key) + "'");
    out = *fallback;
  } else {
    out = parse_complex(*v, name(key));
  }
  resolved_[key] = complex_json(out);
  return out;
}

std::vector<double> Params::reals(const std::string& key, std::optional<std::vector<double>> fallback) {
  const Json* v = lookup(key);
  std::vector<double> out;
  if (v == nullptr) {
    if (!fallback) throw UsageError("missing required config key '" + name(key) + "'");
    out = *fallback;
  } else {
    if (!v->is_array()) type_error(name(key), "an array of numbers");
    for (const Json& x : *v) out.push_back(as_real(x, name(key)));
  }
  resolved_[key] = out;
  return out;
}

Rect Params::rect(const std::string& key, std::optional<Rect> fallback) {
  const Json* v = lookup(key);
  Rect out;
  if (v == nullptr) {
    if (!fallback) throw UsageError("missing required config key '" + name(key) + "'");
    out = *fallback;
  } else {
    if (!v->is_array() || v->size() != 4) type_error(name(key), "[re_min, re_max, im_min, im_max]");
    out = {as_real((*v)[0], name(key)), as_real((*v)[1], name(key)), as_real((*v)[2], name(key)),
           as_real((*v)[3], name(key))};
  }
  try {
    out.validate();
  } catch (const Error& e) {
    throw UsageError("config key '" + name(key) + "': " + e.what());
  }
  resolved_[key] = rect_json(out);
  return out;
}

MeromorphicMap Params::map(const std::string& key) {
  const Json* v = lookup(key);
  if (v == nullptr) throw UsageError("missing required config key '" + name(key) + "'");
  Json resolved;
  MeromorphicMap out = parse_map_json(*v, name(key), resolved);
  resolved_[key] = std::move(resolved);
  return out;
}

std::vector<DiskRegion> Params::disks(const std::string& key) {
  const Json* v = lookup(key);
  if (v == nullptr) throw UsageError("missing required config key '" + name(key) + "'");
  if (!v->is_array()) type_error(name(key), "an array of [re, im, radius] disks");
  std::vector<DiskRegion> out;
  Json resolved = Json::array();
  for (const Json& d : *v) {
    if (!d.is_array() || d.size() != 3) type_error(name(key), "an array of [re, im, radius] disks");
    const Complex c(as_real(d[0], name(key)), as_real(d[1], name(key)));
    const double r = as_real(d[2], name(key));
    try {
      out.emplace_back(c, r, true);
    } catch (const Error& e) {
      throw UsageError("config key '" + name(key) + "': " + e.what());
    }
    resolved.push_back(Json::array({c.real(), c.imag(), r}));
  }
  resolved_[key] = std::move(resolved);
  return out;
}

void Params::finish() const {
  for (const auto& item : object_.items()) {
    if (!seen_.contains(item.key())) throw UsageError("unknown config key '" + name(item.key()) + "'");
  }
}

MeromorphicMap parse_map_json(const Json& value, const std::string& name, Json& resolved) {
  Params p(value, name);
  try {
    if (p.has("compose")) {
      const Json* parts = p.raw("compose");
      if (!parts->is_array() || parts->size() != 2) type_error(p.name("compose"), "an [outer, inner] pair");
      Json outer_json, inner_json;
      const MeromorphicMap outer = parse_map_json((*parts)[0], p.name("compose") + "[0]", outer_json);
      const MeromorphicMap inner = parse_map_json((*parts)[1], p.name("compose") + "[1]", inner_json);
      MeromorphicMap composed = compose(outer, inner);
      const std::string label = p.text("label", composed.label());
      p.set_resolved("compose", Json::array({outer_json, inner_json}));
      p.finish();
      resolved = p.resolved();
      return MeromorphicMap(composed.expression(), {composed.poles().begin(), composed.poles().end()}, label);
    }
    const std::string expr = p.text("expr");
    std::vector<Pole> poles;
    Json poles_json = Json::array();
    if (const Json* list = p.raw("poles")) {
      if (!list->is_array()) type_error(p.name("poles"), "an array of [re, im] or [re, im, order]");
      for (const Json& entry : *list) {
        if (!entry.is_array() || entry.size() < 2 || entry.size() > 3) {
          type_error(p.name("poles"), "an array of [re, im] or [re, im, order]");
        }
        Pole pole;
        pole.location = {as_real(entry[0], p.name("poles")), as_real(entry[1], p.name("poles"))};
        if (entry.size() == 3) {
          if (!entry[2].is_number_integer()) type_error(p.name("poles"), "an integer pole order");
          pole.order = entry[2].get<int>();
        }
        poles.push_back(pole);
        poles_json.push_back(Json::array({pole.location.real(), pole.location.imag(), pole.order}));
      }
    }
    p.set_resolved("poles", poles_json);
    const std::string label = p.text("label", expr);
    p.finish();
    resolved = p.resolved();
    return parse_map(expr, std::move(poles), label);
  } catch (const Error& e) {
    throw UsageError("config key '" + name + "': " + e.what());
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t config_hash(const Json& resolved) { return fnv1a64(resolved.dump()); }

std::string hex_hash(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace mero::cli
