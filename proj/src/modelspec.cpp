#include "tailorder/modelspec.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace tailorder::modelspec {

using copulas::CopulaModel;
using copulas::PickandsFn;
using generators::Generator;
using radial::RadialLaw;

namespace {

struct Segment {
  std::string name;             // empty for key=value segments
  std::vector<double> args;     // parenthesized positional parameters
  bool has_args = false;
};

[[noreturn]] void fail(const std::string& spec, const std::string& why) {
  throw usage_error("bad model spec '" + spec + "': " + why);
}

double require_rho(const std::string& spec, const std::optional<double>& rho,
                   const char* family) {
  if (!rho) fail(spec, std::string(family) + " requires rho=");
  return *rho;
}

double to_number(const std::string& spec, const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') fail(spec, "not a number: " + tok);
  return v;
}

struct Parsed {
  std::vector<Segment> segments;
  std::map<std::string, double> kv;
};

Parsed tokenize(const std::string& spec) {
  Parsed p;
  std::string seg;
  std::istringstream stream(spec);
  while (std::getline(stream, seg, ':')) {
    if (seg.empty()) fail(spec, "empty segment");
    const auto eq = seg.find('=');
    if (eq != std::string::npos) {
      p.kv[seg.substr(0, eq)] = to_number(spec, seg.substr(eq + 1));
      continue;
    }
    Segment s;
    const auto open = seg.find('(');
    if (open == std::string::npos) {
      s.name = seg;
    } else {
      if (seg.back() != ')') fail(spec, "unbalanced parentheses in " + seg);
      s.name = seg.substr(0, open);
      s.has_args = true;
      std::string args = seg.substr(open + 1, seg.size() - open - 2);
      std::string tok;
      std::istringstream as(args);
      while (std::getline(as, tok, ','))
        s.args.push_back(to_number(spec, tok));
    }
    p.segments.push_back(std::move(s));
  }
  if (p.segments.empty()) fail(spec, "no family named");
  return p;
}

void need_args(const std::string& spec, const Segment& s, std::size_t n) {
  if (s.args.size() != n) {
    std::ostringstream os;
    os << s.name << " takes " << n << " parameter(s)";
    fail(spec, os.str());
  }
}

RadialLaw parse_law(const std::string& spec, const Segment& s, int copula_d) {
  if (s.name == "dagum") {
    need_args(spec, s, 3);
    return RadialLaw::dagum(s.args[0], s.args[1], s.args[2]);
  }
  if (s.name == "pweibull" || s.name == "weibull") {
    need_args(spec, s, 1);
    return RadialLaw::positive_weibull(s.args[0]);
  }
  if (s.name == "gamma") {
    need_args(spec, s, 1);
    return RadialLaw::gamma(s.args[0]);
  }
  if (s.name == "invgamma") {
    need_args(spec, s, 1);
    return RadialLaw::inverse_gamma(s.args[0]);
  }
  if (s.name == "kproduct") {
    if (s.args.size() == 1)
      return RadialLaw::k_product(copula_d, s.args[0]);
    need_args(spec, s, 2);
    return RadialLaw::k_product(static_cast<int>(s.args[0]), s.args[1]);
  }
  if (s.name == "pointmass") {
    need_args(spec, s, 1);
    return RadialLaw::point_mass(s.args[0]);
  }
  if (s.name == "kotz") {
    need_args(spec, s, 3);
    return RadialLaw::kotz(s.args[0], s.args[1], s.args[2]);
  }
  if (s.name == "gigt") {
    need_args(spec, s, 1);
    return RadialLaw::gig_t(s.args[0]);
  }
  fail(spec, "unknown radial law '" + s.name + "'");
}

}  // namespace

CopulaModel parse(const std::string& spec) {
  const Parsed p = tokenize(spec);
  const Segment& fam = p.segments[0];
  const int d = p.kv.count("d") ? static_cast<int>(p.kv.at("d")) : 2;
  const std::optional<double> rho =
      p.kv.count("rho") ? std::optional<double>(p.kv.at("rho")) : std::nullopt;

  try {
    if (fam.name == "independence") return CopulaModel::independence(d);
    if (fam.name == "comonotone") return CopulaModel::comonotone(d);
    if (fam.name == "gaussian")
      return CopulaModel::gaussian(require_rho(spec, rho, "gaussian"));
    if (fam.name == "student") {
      const double nu = fam.has_args && !fam.args.empty()
                            ? fam.args[0]
                            : (p.kv.count("nu") ? p.kv.at("nu") : 0.0);
      if (nu <= 0.0) fail(spec, "student requires student(nu) or nu=");
      return CopulaModel::student(require_rho(spec, rho, "student"), nu);
    }
    if (fam.name == "elliptical") {
      if (p.segments.size() < 2) fail(spec, "elliptical requires a subfamily");
      const Segment& sub = p.segments[1];
      if (sub.name == "gaussian")
        return CopulaModel::gaussian(require_rho(spec, rho, "elliptical:gaussian"));
      if (sub.name == "student") {
        need_args(spec, sub, 1);
        return CopulaModel::student(
            require_rho(spec, rho, "elliptical:student"), sub.args[0]);
      }
      if (sub.name == "kotz") {
        need_args(spec, sub, 3);
        return CopulaModel::kotz(require_rho(spec, rho, "elliptical:kotz"),
                                 sub.args[0], sub.args[1], sub.args[2]);
      }
      fail(spec, "unknown elliptical subfamily '" + sub.name + "'");
    }
    if (fam.name == "ev") {
      if (p.segments.size() < 2) fail(spec, "ev requires a subfamily");
      const Segment& sub = p.segments[1];
      if (sub.name == "logistic") {
        need_args(spec, sub, 1);
        return CopulaModel::extreme_value(PickandsFn::logistic(sub.args[0], d));
      }
      if (sub.name == "independence")
        return CopulaModel::extreme_value(PickandsFn::independence(d));
      if (sub.name == "comonotone")
        return CopulaModel::extreme_value(PickandsFn::comonotone(d));
      fail(spec, "unknown ev subfamily '" + sub.name + "'");
    }
    if (fam.name == "archimedean") {
      if (p.segments.size() < 2) fail(spec, "archimedean requires a generator");
      const Segment& sub = p.segments[1];
      if (sub.name == "acig") {
        need_args(spec, sub, 1);
        return CopulaModel::archimedean(d, Generator::acig(sub.args[0]));
      }
      if (sub.name == "joe2000") {
        need_args(spec, sub, 1);
        return CopulaModel::archimedean(d, Generator::joe2000(sub.args[0]));
      }
      if (sub.name == "gumbel") {
        need_args(spec, sub, 1);
        return CopulaModel::archimedean(d, Generator::gumbel(sub.args[0]));
      }
      if (sub.name == "williamson") {
        if (p.segments.size() < 3)
          fail(spec, "archimedean:williamson requires a radial law");
        const RadialLaw law = parse_law(spec, p.segments[2], d);
        return CopulaModel::archimedean(d, Generator::williamson(law, d));
      }
      fail(spec, "unknown generator '" + sub.name + "'");
    }
  } catch (const usage_error&) {
    throw;
  } catch (const std::exception& e) {
    fail(spec, e.what());
  }
  fail(spec, "unknown family '" + fam.name + "'");
}

}  // namespace tailorder::modelspec
