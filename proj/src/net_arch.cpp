#include "scalemodel/net_arch.hpp"

#include <string>

#include "scalemodel/error.hpp"

namespace scalemodel {

LayerCounts dense_counts(const DenseLayerSpec& layer) {
  if (layer.inputs < 1 || layer.outputs < 1) {
    throw ModelError("dense layer needs inputs >= 1 and outputs >= 1");
  }
  const std::uint64_t matrix = layer.inputs * layer.outputs;
  return LayerCounts{matrix + (layer.include_bias ? layer.outputs : 0),
                     2 * matrix};
}

std::uint64_t conv_output_side(std::uint64_t input_side,
                               std::uint64_t kernel_side, std::uint64_t border,
                               std::uint64_t stride) {
  if (input_side < 1 || kernel_side < 1 || stride < 1) {
    throw ModelError("conv: input side, kernel side and stride must be >= 1");
  }
  if (kernel_side > input_side + border) {
    throw ModelError("conv: kernel side " + std::to_string(kernel_side) +
                     " exceeds padded input side " +
                     std::to_string(input_side + border));
  }
  return (input_side - kernel_side + border) / stride + 1;
}

ConvCounts conv_counts(const ConvLayerSpec& layer, const TensorShape& in) {
  if (layer.num_maps < 1) {
    throw ModelError("conv: num_maps must be >= 1");
  }
  if (in.depth < 1) {
    throw ModelError("conv: input depth must be >= 1");
  }
  const std::uint64_t c = conv_output_side(in.side, layer.kernel_side,
                                           layer.border, layer.stride);
  const std::uint64_t filter = layer.kernel_side * layer.kernel_side * in.depth;
  ConvCounts counts;
  counts.forward_madds = layer.num_maps * filter * c * c;
  counts.weights = layer.num_maps * filter;
  if (layer.include_bias) {
    counts.weights += layer.num_maps * c * c;
  }
  counts.out = TensorShape{c, layer.num_maps};
  return counts;
}

NetworkCounts network_totals(std::span<const LayerSpec> layers,
                             const TensorShape& input) {
  NetworkCounts totals;
  TensorShape shape = input;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    try {
      if (const auto* dense = std::get_if<DenseLayerSpec>(&layers[i])) {
        if (dense->inputs != shape.flattened()) {
          throw ModelError("expects " + std::to_string(dense->inputs) +
                           " inputs but previous output has " +
                           std::to_string(shape.flattened()));
        }
        const LayerCounts c = dense_counts(*dense);
        totals.total_weights += c.weights;
        totals.forward_madds += c.forward_madds;
        shape = TensorShape{1, dense->outputs};
      } else {
        const ConvCounts c =
            conv_counts(std::get<ConvLayerSpec>(layers[i]), shape);
        totals.total_weights += c.weights;
        totals.forward_madds += c.forward_madds;
        shape = c.out;
      }
    } catch (const ModelError& e) {
      throw ModelError("layer " + std::to_string(i) + ": " + e.what());
    }
  }
  totals.gradient_madds = 3 * totals.forward_madds;
  return totals;
}

}  // namespace scalemodel
