#include "lawkit/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lawkit/errors.hpp"

namespace lawkit {
namespace {

void check_lengths(std::span<const double> actual, std::span<const double> predicted,
                   const char* op) {
  if (actual.empty()) throw ValidationError(std::string(op) + ": empty input");
  if (actual.size() != predicted.size()) {
    throw ValidationError(std::string(op) + ": length mismatch (" +
                          std::to_string(actual.size()) + " vs " +
                          std::to_string(predicted.size()) + ")");
  }
}

double finite_or_throw(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw NumericalError(std::string(what) + " evaluated to a non-finite value");
  }
  return value;
}

}  // namespace

std::string_view to_string(LawKind kind) {
  return kind == LawKind::chinchilla ? "chinchilla" : "inference_efficient";
}

LawKind law_kind_from_string(std::string_view text) {
  if (text == "chinchilla") return LawKind::chinchilla;
  if (text == "inference_efficient" || text == "inference-efficient") {
    return LawKind::inference_efficient;
  }
  throw ValidationError("unknown law kind: \"" + std::string(text) + "\"");
}

void validate(LawKind kind, const LawCoefficients& c) {
  for (double v : {c.E, c.A, c.B, c.alpha, c.beta, c.gamma, c.epsilon}) {
    if (!std::isfinite(v)) throw ValidationError("law coefficients must be finite");
  }
  if (c.tied) {
    const bool ok = kind == LawKind::chinchilla
                        ? c.alpha == c.beta
                        : c.alpha == c.beta && c.beta == c.gamma;
    if (!ok) throw ValidationError("tied coefficients must have equal exponents");
  }
  if (kind == LawKind::chinchilla && c.epsilon != 0.0) {
    throw ValidationError("Chinchilla coefficients must have epsilon == 0");
  }
}

double eval_chinchilla(const LawCoefficients& c, double n_params, double n_tokens) {
  if (!(n_params > 0) || !(n_tokens > 0)) {
    throw ValidationError("eval_chinchilla requires n_params > 0 and n_tokens > 0");
  }
  return finite_or_throw(
      c.E + c.A * std::pow(n_params, -c.alpha) + c.B * std::pow(n_tokens, -c.beta),
      "chinchilla law");
}

double eval_inference_efficient(const LawCoefficients& c, double n_params, double n_tokens,
                                double aspect_ratio) {
  if (!(n_params > 0) || !(n_tokens > 0) || !(aspect_ratio > 0)) {
    throw ValidationError(
        "eval_inference_efficient requires n_params, n_tokens, and aspect_ratio > 0");
  }
  const double base =
      c.E + c.A * std::pow(n_params, -c.alpha) + c.B * std::pow(n_tokens, -c.beta);
  return finite_or_throw(base * (1.0 + c.epsilon * std::pow(aspect_ratio, c.gamma)),
                         "inference-efficient law");
}

double eval_law(LawKind kind, const LawCoefficients& c, double n_params, double n_tokens,
                double aspect_ratio) {
  return kind == LawKind::chinchilla
             ? eval_chinchilla(c, n_params, n_tokens)
             : eval_inference_efficient(c, n_params, n_tokens, aspect_ratio);
}

double mse(std::span<const double> actual, std::span<const double> predicted) {
  check_lengths(actual, predicted, "mse");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = actual[i] - predicted[i];
    sum += d * d;
  }
  return sum / static_cast<double>(actual.size());
}

double r_squared(std::span<const double> actual, std::span<const double> predicted) {
  check_lengths(actual, predicted, "r_squared");
  const double mean =
      std::accumulate(actual.begin(), actual.end(), 0.0) / static_cast<double>(actual.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double res = actual[i] - predicted[i];
    const double dev = actual[i] - mean;
    ss_res += res * res;
    ss_tot += dev * dev;
  }
  if (ss_tot == 0.0) throw ValidationError("r_squared undefined: actuals have zero variance");
  return 1.0 - ss_res / ss_tot;
}

std::vector<double> relative_errors(std::span<const double> actual,
                                    std::span<const double> predicted) {
  check_lengths(actual, predicted, "relative_errors");
  std::vector<double> out(actual.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 0.0) {
      throw ValidationError("relative error undefined for zero actual at index " +
                            std::to_string(i));
    }
    out[i] = std::abs(actual[i] - predicted[i]) / actual[i];
  }
  return out;
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("spearman: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw ValidationError("spearman requires length >= 2");

  const std::vector<double> ra = fractional_ranks(a);
  const std::vector<double> rb = fractional_ranks(b);

  const auto has_ties = [n](const std::vector<double>& r) {
    // With no ties the fractional ranks are exactly 1..n.
    double lo = r[0], hi = r[0];
    for (double v : r) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo != 1.0 || hi != static_cast<double>(n)) return true;
    std::vector<double> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (sorted[i] != static_cast<double>(i + 1)) return true;
    }
    return false;
  };

  if (!has_ties(ra) && !has_ties(rb)) {
    // d^2 form; exact for integer ranks, so strict monotone pairs hit +/-1.
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = ra[i] - rb[i];
      d2 += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
  }

  const double mean = (static_cast<double>(n) + 1.0) / 2.0;  // rank mean, ties included
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw ValidationError("spearman undefined: all values tied on one side");
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace lawkit
