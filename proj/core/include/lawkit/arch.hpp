#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lawkit {

/// One decoder-only transformer architecture point.
struct TransformerConfig {
  std::int64_t d_model = 0;
  std::int64_t f_size = 0;
  std::int64_t n_layers = 0;
  std::int64_t n_heads = 0;
  std::int64_t vocab_size = 0;
  std::string label;

  friend bool operator==(const TransformerConfig&, const TransformerConfig&) = default;
};

/// True when the two configs describe the same tensor shapes (labels ignored).
bool same_shape(const TransformerConfig& a, const TransformerConfig& b);

/// Throws ValidationError unless all dimensions are >= 1 and
/// d_model is a multiple of n_heads.
void validate(const TransformerConfig& config);

/// R = d_model / n_layers.
double aspect_ratio(const TransformerConfig& config);

enum class NormKind {
  none,       // 0 params per normalization
  gain,       // d_model params (scale only)
  gain_bias,  // 2 * d_model params
};

/// How to turn shapes into a parameter count. The default reproduces the
/// nominal size labels of GPT-style decoder stacks with untied embeddings,
/// two scale-only norms per layer, and one final norm.
struct CountingConvention {
  bool tie_embeddings = false;
  NormKind norm_kind = NormKind::gain;
  int norms_per_layer = 2;
  bool include_final_norm = true;

  friend bool operator==(const CountingConvention&, const CountingConvention&) = default;
};

/// GPT-NeoX tokenizer vocabulary, the default for synthetic configs.
inline constexpr std::int64_t kDefaultVocabSize = 50432;

/// Total parameter count of the decoder stack:
///   embeddings (doubled when untied)
/// + n_layers * (4 d^2 attention + 3 d f gated MLP + per-layer norms)
/// + optional final norm.
/// Throws NumericalError when the count exceeds int64 range.
std::int64_t count_params(const TransformerConfig& config,
                          const CountingConvention& convention = {});

/// Training cost estimate, 6 * N * D. Exact for N, D where 6N is below 2^53.
double training_flops(std::int64_t n_params, std::int64_t n_tokens);

/// Compute-optimal token budget, exactly 20 * N (callers round for display).
std::int64_t chinchilla_optimal_tokens(std::int64_t n_params);

/// A fixed inference setting; latency measurements and predictions are only
/// comparable within one workload.
struct Workload {
  std::int64_t batch_size = 1;
  std::int64_t input_tokens = 128;
  std::int64_t output_tokens = 256;
  std::string device_tag;

  friend bool operator==(const Workload&, const Workload&) = default;
};

/// Result of variant enumeration. Candidates outside the size tolerance are
/// reported in `rejected` rather than silently dropped.
struct VariantSet {
  struct Rejection {
    double target_ratio = 0.0;
    TransformerConfig candidate;
    double size_error = 0.0;  // |count - base_count| / base_count
  };
  std::vector<TransformerConfig> configs;
  std::vector<Rejection> rejected;
};

/// Generates one candidate per target aspect ratio from `base`:
///   d_ideal = base_d * cbrt(target / base_ratio)   (holds d^2 * n_layers)
///   n_layers = round(d_ideal / target), at least 1
///   d_model  = target * n_layers rounded to a multiple of n_heads
///   f_size   = base f/d ratio applied to d_model, rounded to a multiple of 128
/// Candidates whose parameter count deviates from the base count by more than
/// size_tolerance (a fraction) are rejected. Throws ValidationError on an
/// empty grid or a tolerance outside (0, 1).
VariantSet enumerate_variants(const TransformerConfig& base,
                              std::span<const double> ratio_grid,
                              double size_tolerance,
                              const CountingConvention& convention = {});

}  // namespace lawkit
