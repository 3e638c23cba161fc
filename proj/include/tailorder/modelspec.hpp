#pragma once

#include <string>

#include "tailorder/copulas.hpp"

namespace tailorder::modelspec {

/// Parses the flat model grammar `family[:subfamily][:params][:key=value]`
/// with parenthesized positional parameters, e.g.
///   independence:d=3
///   gaussian:rho=0.5
///   student(4):rho=0.5
///   elliptical:kotz(1,1,0.5):rho=0.5
///   ev:logistic(2):d=2
///   archimedean:acig(1.5):d=2
///   archimedean:gumbel(2):d=3
///   archimedean:joe2000(0.5):d=2
///   archimedean:williamson:dagum(0.6,1.8,1):d=2
/// Radial laws for the williamson route: dagum(a,b,sigma), pweibull(a),
/// gamma(k), invgamma(a), kproduct(d,a), pointmass(r), kotz(N,beta,xi),
/// gigt(nu). Throws usage_error on malformed input.
copulas::CopulaModel parse(const std::string& spec);

}  // namespace tailorder::modelspec
