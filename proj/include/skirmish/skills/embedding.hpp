#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace skirmish {

inline constexpr std::size_t kEmbeddingDim = 256;
using Embedding = std::array<double, kEmbeddingDim>;

/// Lower-cased alphanumeric runs; everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Token counts hashed into kEmbeddingDim buckets with weight 1 + ln(tf),
/// then L2-normalised. Text without tokens maps to e0.
Embedding embed(std::string_view text);

/// Dot product divided by both norms; 0 if either vector is zero.
double cosine(const Embedding& a, const Embedding& b);

}  // namespace skirmish
