#pragma once

#include <cstdint>
#include <span>
#include <variant>

namespace scalemodel {

// Fully connected layer: an inputs x outputs weight matrix.
struct DenseLayerSpec {
  std::uint64_t inputs = 1;
  std::uint64_t outputs = 1;
  bool include_bias = false;
};

// Convolution with num_maps square kernel_side x kernel_side filters over a
// square input.
struct ConvLayerSpec {
  std::uint64_t num_maps = 1;
  std::uint64_t kernel_side = 1;
  std::uint64_t border = 0;
  std::uint64_t stride = 1;
  bool include_bias = false;
};

using LayerSpec = std::variant<DenseLayerSpec, ConvLayerSpec>;

struct TensorShape {
  std::uint64_t side = 1;
  std::uint64_t depth = 1;

  std::uint64_t flattened() const { return side * side * depth; }
  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

struct LayerCounts {
  std::uint64_t weights = 0;
  std::uint64_t forward_madds = 0;
};

struct ConvCounts {
  std::uint64_t weights = 0;
  std::uint64_t forward_madds = 0;
  TensorShape out;
};

// Totals over a network. Back-propagation costs a forward pass, an error
// pass and a gradient pass, each as expensive as the forward one.
struct NetworkCounts {
  std::uint64_t total_weights = 0;
  std::uint64_t forward_madds = 0;
  std::uint64_t gradient_madds = 0;

  friend bool operator==(const NetworkCounts&, const NetworkCounts&) = default;
};

// Bias adds weights but no madds: forward cost is 2 * inputs * outputs.
LayerCounts dense_counts(const DenseLayerSpec& layer);

// Sliding-window count along one side: (l - k + b) / s + 1 with integer
// division. Throws ModelError when the kernel does not fit the padded input.
std::uint64_t conv_output_side(std::uint64_t input_side,
                               std::uint64_t kernel_side, std::uint64_t border,
                               std::uint64_t stride);

// Forward madds n*k*k*d*c*c; weights n*k*k*d, plus n*c*c with bias.
ConvCounts conv_counts(const ConvLayerSpec& layer, const TensorShape& in);

// Chains layer shapes starting from input. A dense layer must take exactly
// the flattened size of the previous output; throws ModelError naming the
// offending layer index otherwise.
NetworkCounts network_totals(std::span<const LayerSpec> layers,
                             const TensorShape& input);

}  // namespace scalemodel
