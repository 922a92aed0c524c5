#include "lawkit/arch.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lawkit/errors.hpp"

namespace lawkit {
namespace {

std::string describe(const TransformerConfig& c) {
  std::string name = c.label.empty() ? std::string("config") : c.label;
  return name + " (d_model=" + std::to_string(c.d_model) +
         ", f_size=" + std::to_string(c.f_size) +
         ", n_layers=" + std::to_string(c.n_layers) +
         ", n_heads=" + std::to_string(c.n_heads) +
         ", vocab=" + std::to_string(c.vocab_size) + ")";
}

std::int64_t norm_param_count(NormKind kind, std::int64_t d_model) {
  switch (kind) {
    case NormKind::none:
      return 0;
    case NormKind::gain:
      return d_model;
    case NormKind::gain_bias:
      return 2 * d_model;
  }
  return 0;
}

// Nearest positive multiple of `step`.
std::int64_t round_to_multiple(double value, std::int64_t step) {
  auto k = static_cast<std::int64_t>(std::llround(value / static_cast<double>(step)));
  return std::max<std::int64_t>(1, k) * step;
}

}  // namespace

bool same_shape(const TransformerConfig& a, const TransformerConfig& b) {
  return a.d_model == b.d_model && a.f_size == b.f_size &&
         a.n_layers == b.n_layers && a.n_heads == b.n_heads &&
         a.vocab_size == b.vocab_size;
}

void validate(const TransformerConfig& config) {
  if (config.d_model < 1 || config.f_size < 1 || config.n_layers < 1 ||
      config.n_heads < 1 || config.vocab_size < 1) {
    throw ValidationError("all dimensions must be >= 1 in " + describe(config));
  }
  if (config.d_model % config.n_heads != 0) {
    throw ValidationError("d_model must be a multiple of n_heads in " + describe(config));
  }
}

double aspect_ratio(const TransformerConfig& config) {
  validate(config);
  return static_cast<double>(config.d_model) / static_cast<double>(config.n_layers);
}

std::int64_t count_params(const TransformerConfig& config,
                          const CountingConvention& convention) {
  validate(config);
  if (convention.norms_per_layer < 0) {
    throw ValidationError("norms_per_layer must be nonnegative");
  }

  using u128 = unsigned __int128;
  const u128 d = static_cast<u128>(config.d_model);
  const u128 f = static_cast<u128>(config.f_size);
  const u128 layers = static_cast<u128>(config.n_layers);
  const u128 vocab = static_cast<u128>(config.vocab_size);
  const u128 norm = static_cast<u128>(norm_param_count(convention.norm_kind, config.d_model));

  u128 embeddings = vocab * d;
  if (!convention.tie_embeddings) embeddings *= 2;

  const u128 per_layer = 4 * d * d + 3 * d * f +
                         static_cast<u128>(convention.norms_per_layer) * norm;
  u128 total = embeddings + layers * per_layer;
  if (convention.include_final_norm) total += norm;

  if (total > static_cast<u128>(std::numeric_limits<std::int64_t>::max())) {
    throw NumericalError("parameter count overflows int64 for " + describe(config));
  }
  return static_cast<std::int64_t>(total);
}

double training_flops(std::int64_t n_params, std::int64_t n_tokens) {
  if (n_params < 1 || n_tokens < 1) {
    throw ValidationError("training_flops requires n_params >= 1 and n_tokens >= 1");
  }
  // (6 * N) is exact below 2^53, so the product rounds once.
  return (6.0 * static_cast<double>(n_params)) * static_cast<double>(n_tokens);
}

std::int64_t chinchilla_optimal_tokens(std::int64_t n_params) {
  if (n_params < 1) throw ValidationError("n_params must be >= 1");
  if (n_params > std::numeric_limits<std::int64_t>::max() / 20) {
    throw NumericalError("20 * n_params overflows int64");
  }
  return 20 * n_params;
}

VariantSet enumerate_variants(const TransformerConfig& base,
                              std::span<const double> ratio_grid,
                              double size_tolerance,
                              const CountingConvention& convention) {
  validate(base);
  if (ratio_grid.empty()) throw ValidationError("ratio_grid must be non-empty");
  if (!(size_tolerance > 0.0 && size_tolerance < 1.0)) {
    throw ValidationError("size_tolerance must lie in (0, 1)");
  }
  for (double r : ratio_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw ValidationError("target ratios must be positive and finite");
    }
  }

  const double base_ratio = aspect_ratio(base);
  const double f_ratio = static_cast<double>(base.f_size) / static_cast<double>(base.d_model);
  const std::int64_t base_count = count_params(base, convention);

  VariantSet out;
  for (double target : ratio_grid) {
    const double d_ideal = static_cast<double>(base.d_model) * std::cbrt(target / base_ratio);
    const auto n_layers = std::max<std::int64_t>(1, std::llround(d_ideal / target));
    const std::int64_t d_model =
        round_to_multiple(target * static_cast<double>(n_layers), base.n_heads);
    const std::int64_t f_size = round_to_multiple(f_ratio * static_cast<double>(d_model), 128);

    TransformerConfig candidate{d_model, f_size, n_layers, base.n_heads, base.vocab_size, {}};
    if (same_shape(candidate, base)) {
      out.configs.push_back(base);
      continue;
    }
    candidate.label = base.label.empty()
                          ? "variant-r" + std::to_string(std::llround(target))
                          : base.label + "-r" + std::to_string(std::llround(target));

    const std::int64_t count = count_params(candidate, convention);
    const double size_error =
        std::abs(static_cast<double>(count - base_count)) / static_cast<double>(base_count);
    if (size_error <= size_tolerance) {
      out.configs.push_back(std::move(candidate));
    } else {
      out.rejected.push_back({target, std::move(candidate), size_error});
    }
  }
  return out;
}

}  // namespace lawkit
