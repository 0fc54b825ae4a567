#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "conflab/conformal.hpp"
#include "conflab/text.hpp"

namespace conflab {

namespace text {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  double x = 0.0;
  const auto res = std::from_chars(begin, end, x);
  if (t.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ValidationError("invalid " + std::string(what) + ": '" + t + "'");
  }
  return x;
}

long long parse_int(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  long long x = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ValidationError("invalid " + std::string(what) + ": '" + t + "'");
  }
  return x;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace text

cd parse_complex(const std::string& raw) {
  const std::string s = text::trim(raw);
  if (s.empty()) throw ValidationError("empty complex number");
  if (s.back() != 'i') return {text::parse_double(s, "complex number"), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return text::parse_double(t, "imaginary part");
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {text::parse_double(body.substr(0, split), "real part"), imag_part(body.substr(split))};
}

std::string format_complex(cd z) {
  std::string im = text::format_double(z.imag());
  if (im.front() != '-') im = "+" + im;
  return text::format_double(z.real()) + im + "i";
}

std::string ConformalMap::describe() const {
  using text::format_double;
  switch (kind_) {
    case MapKind::identity:
      return "identity";
    case MapKind::moebius:
      return "moebius a=" + format_complex(a_) + " lambda=" + format_complex(b_);
    case MapKind::cayley:
      return std::string("cayley direction=") +
             (direction_ == CayleyDirection::disc_to_halfplane ? "disc_to_halfplane" : "halfplane_to_disc");
    case MapKind::power_sector:
      return "power_sector beta=" + format_double(x_) + " rotation=" + format_double(y_) +
             " translation=" + format_complex(a_);
    case MapKind::halfplane_power: {
      std::string s = "halfplane_power c=" + format_complex(a_) + " gamma=" + format_double(x_) +
                      " shift=" + format_complex(b_);
      if (!label_.empty()) s += " label=" + label_;
      return s;
    }
    case MapKind::holder_power:
      return "holder_power kappa=" + format_double(x_) + " alpha=" + format_double(y_) +
             " rho=" + format_double(std::arg(a_));
    case MapKind::composite: {
      std::string s;
      for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) s += " ; ";
        s += members_[i].describe();
      }
      return s;
    }
  }
  return {};
}

namespace {

class KeyValues {
 public:
  KeyValues(const std::string& kind, const std::vector<std::string>& tokens) : kind_(kind) {
    for (const auto& tok : tokens) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw ValidationError(kind + ": expected key=value, got '" + tok + "'");
      if (!values_.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
        throw ValidationError(kind + ": duplicate key '" + tok.substr(0, eq) + "'");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string v = it->second;
    values_.erase(it);
    return v;
  }
  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw ValidationError(kind_ + ": missing key '" + key + "'");
    return *v;
  }
  double real(const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto v = take(key);
    if (!v) {
      if (!fallback) throw ValidationError(kind_ + ": missing key '" + key + "'");
      return *fallback;
    }
    return text::parse_double(*v, key);
  }
  cd complex(const std::string& key, std::optional<cd> fallback = std::nullopt) {
    auto v = take(key);
    if (!v) {
      if (!fallback) throw ValidationError(kind_ + ": missing key '" + key + "'");
      return *fallback;
    }
    return parse_complex(*v);
  }
  void finish() const {
    if (!values_.empty()) throw ValidationError(kind_ + ": unknown key '" + values_.begin()->first + "'");
  }

 private:
  std::string kind_;
  std::map<std::string, std::string> values_;
};

ConformalMap parse_single(const std::string& line) {
  std::istringstream in(line);
  std::string kind;
  in >> kind;
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  KeyValues kv(kind, tokens);
  ConformalMap m = ConformalMap::identity();
  if (kind == "identity") {
  } else if (kind == "moebius") {
    const cd a = kv.complex("a");
    m = ConformalMap::moebius(a, kv.complex("lambda", cd(1.0)));
  } else if (kind == "cayley") {
    const std::string dir = kv.take("direction").value_or("disc_to_halfplane");
    if (dir == "disc_to_halfplane") {
      m = ConformalMap::cayley(CayleyDirection::disc_to_halfplane);
    } else if (dir == "halfplane_to_disc") {
      m = ConformalMap::cayley(CayleyDirection::halfplane_to_disc);
    } else {
      throw ValidationError("cayley: unknown direction '" + dir + "'");
    }
  } else if (kind == "power_sector") {
    const double beta = kv.real("beta");
    const double rot = kv.real("rotation", 0.0);
    m = ConformalMap::power_sector(beta, rot, kv.complex("translation", cd(0.0)));
  } else if (kind == "halfplane_power") {
    const cd c = kv.complex("c");
    const double gamma = kv.real("gamma");
    const cd shift = kv.complex("shift", cd(0.0));
    m = ConformalMap::halfplane_power(c, gamma, shift, kv.take("label").value_or(""));
  } else if (kind == "holder_power") {
    const double kappa = kv.real("kappa");
    const double alpha = kv.real("alpha");
    m = ConformalMap::holder_power(kappa, alpha, kv.real("rho", 0.0));
  } else {
    throw ValidationError("unknown map kind '" + kind + "'");
  }
  kv.finish();
  return m;
}

}  // namespace

ConformalMap parse_map(const std::string& line) {
  const auto parts = text::split(line, ';');
  if (parts.size() == 1) {
    if (parts[0].empty()) throw ValidationError("empty map description");
    return parse_single(parts[0]);
  }
  std::vector<ConformalMap> members;
  for (const auto& p : parts) {
    if (p.empty()) throw ValidationError("empty composite member");
    members.push_back(parse_single(p));
  }
  return ConformalMap::composite(std::move(members));
}

std::vector<ConformalMap> parse_domain_text(const std::string& contents) {
  std::vector<ConformalMap> maps;
  std::istringstream in(contents);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = text::trim(line.substr(0, hash));
    if (body.empty()) continue;
    try {
      maps.push_back(parse_map(body));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return maps;
}

std::vector<ConformalMap> load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open domain file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_domain_text(ss.str());
}

}  // namespace conflab
