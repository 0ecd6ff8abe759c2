#include "problem_file.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kfibpal/forms.hpp"

namespace kfibpal::cli {

using realnum::RealInterval;

BigRational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  BigRational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  BigRational q = parse_decimal(text.substr(0, slash)) / den;
  q.canonicalize();
  return q;
}

RealInterval eval_symbolic_log(const std::string& expr, int digits) {
  std::istringstream in(expr);
  std::string head;
  in >> head;
  bool negate = false;
  if (!head.empty() && head[0] == '-') {
    negate = true;
    head.erase(0, 1);
  }
  auto need_int = [&](const char* what) {
    long v = 0;
    if (!(in >> v)) throw std::invalid_argument("'" + expr + "': expected " + what);
    return v;
  };
  RealInterval out(digits);
  if (head == "log-alpha") {
    long order = need_int("an order");
    out = pipeline::root_logs(static_cast<int>(order), digits).log_alpha;
  } else if (head == "log-10") {
    out = realnum::log(RealInterval::exact(10L, digits));
  } else if (head == "log-rational") {
    std::string q;
    if (!(in >> q)) throw std::invalid_argument("'" + expr + "': expected P/Q");
    BigRational value = parse_rational(q);
    if (value <= 0) throw std::invalid_argument("'" + expr + "': argument must be positive");
    out = realnum::log(RealInterval::exact(value, digits));
  } else if (head == "log-expr") {
    std::string shape;
    in >> shape;
    if (shape != "9f/d") throw std::invalid_argument("'" + expr + "': only log-expr 9f/d K D is supported");
    long order = need_int("an order");
    long divisor = need_int("a positive divisor");
    if (divisor <= 0) throw std::invalid_argument("'" + expr + "': divisor must be positive");
    out = pipeline::root_logs(static_cast<int>(order), digits).log_9f - realnum::log(RealInterval::exact(divisor, digits));
  } else {
    throw std::invalid_argument("unknown symbolic log '" + expr + "'");
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("'" + expr + "': trailing '" + rest + "'");
  out = out.with_digits(digits);
  return negate ? -out : out;
}

lattice::ReductionProblem load_problem(const std::string& json_text) {
  using json = nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("problem file: ") + e.what());
  }
  auto text = [&](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw std::invalid_argument("problem file: expected a string or integer, got " + v.dump());
  };
  try {
    const int digits = j.value("digits", 240);
    lattice::ReductionProblem p;
    for (const auto& e : j.at("etas")) p.etas.push_back(eval_symbolic_log(e.get<std::string>(), digits));
    p.eta0 = j.contains("eta0") ? eval_symbolic_log(j["eta0"].get<std::string>(), digits) : RealInterval::exact(0L, digits);
    for (const auto& b : j.at("coeff_bounds")) p.coeff_bounds.push_back(parse_decimal_integer(text(b)));
    if (p.coeff_bounds.size() != p.etas.size()) throw std::invalid_argument("problem file: one coefficient bound per eta");
    p.scale = parse_decimal_integer(text(j.at("scale")));
    p.c3 = parse_rational(text(j.at("c3")));
    p.c4 = eval_symbolic_log(j.at("c4").get<std::string>(), digits);
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("problem file: ") + e.what());
  }
}

}  // namespace kfibpal::cli
