#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace lawkit {

enum class LawKind {
  chinchilla,           // L(N, D) = E + A N^-alpha + B D^-beta
  inference_efficient,  // L(N, D, R) = (E + A N^-alpha + B D^-beta) (1 + eps R^gamma)
};

std::string_view to_string(LawKind kind);

/// Accepts "chinchilla" and "inference_efficient" (plus the hyphenated CLI
/// spelling). Throws ValidationError on anything else.
LawKind law_kind_from_string(std::string_view text);

struct LawCoefficients {
  double E = 0.0;
  double A = 0.0;
  double B = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;    // inference-efficient only
  double epsilon = 0.0;  // 0 for the Chinchilla kind
  bool tied = false;     // alpha == beta (== gamma) enforced

  friend bool operator==(const LawCoefficients&, const LawCoefficients&) = default;
};

/// Throws ValidationError when a field is non-finite, a tied record has
/// unequal exponents, or a Chinchilla record has epsilon != 0.
void validate(LawKind kind, const LawCoefficients& c);

/// E + A N^-alpha + B D^-beta. Coefficients of any sign are legal; throws
/// NumericalError if the result is non-finite.
double eval_chinchilla(const LawCoefficients& c, double n_params, double n_tokens);

/// (E + A N^-alpha + B D^-beta) * (1 + epsilon R^gamma).
double eval_inference_efficient(const LawCoefficients& c, double n_params, double n_tokens,
                                double aspect_ratio);

/// Dispatches on kind; aspect_ratio is ignored for the Chinchilla kind.
double eval_law(LawKind kind, const LawCoefficients& c, double n_params, double n_tokens,
                double aspect_ratio);

// Fit-quality metrics. All require equal, nonzero lengths.

/// Mean squared error, (1/n) sum (a_i - p_i)^2.
double mse(std::span<const double> actual, std::span<const double> predicted);

/// 1 - sum (a_i - p_i)^2 / sum (a_i - mean(a))^2; may be negative. Throws
/// ValidationError when the actuals have zero variance.
double r_squared(std::span<const double> actual, std::span<const double> predicted);

/// Per-point |a_i - p_i| / a_i. Throws ValidationError on a zero actual.
std::vector<double> relative_errors(std::span<const double> actual,
                                    std::span<const double> predicted);

/// Fractional (average-tie) ranks, 1-based.
std::vector<double> fractional_ranks(std::span<const double> values);

/// Spearman rank correlation: Pearson correlation of fractional ranks.
/// Exactly +1 / -1 for strictly co-/anti-monotone inputs. Requires length
/// >= 2; throws ValidationError when either side is all ties.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace lawkit
