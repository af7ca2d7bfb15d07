#pragma once

#include <lcr/label_cover.hpp>
#include <lcr/modular_linalg.hpp>
#include <lcr/relaxations.hpp>

#include <map>
#include <string>

namespace lcr {

// Weight: the sum of the coordinates modulo p.
auto weight(std::span<const Residue> v, std::uint32_t p) -> Residue;

// Componentwise product modulo p.
auto hadamard(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p) -> ResidueVec;

// Nonzero rows of the reduced echelon form of the span.
auto span_basis(const std::vector<ResidueVec> & vectors, std::size_t length, std::uint32_t p) -> std::vector<ResidueVec>;

// True iff v lies in the span of an echelon basis produced by span_basis.
auto in_span(const std::vector<ResidueVec> & basis, const ResidueVec & v, std::uint32_t p) -> bool;

// (V, i, v) with V given by an echelon basis and i the all-ones vector of length n.
struct VectorObject {
    std::uint32_t p = 2;
    std::uint32_t k = 2;
    std::uint32_t n = 1;
    std::vector<ResidueVec> space_basis;
    // One vector per domain element.
    std::vector<ResidueVec> v;
};

struct VerifyReport {
    bool ok = true;
    std::string violation;
};

// The four conditions of the definition. The u arguments of the orthogonality and
// projection conditions range over multisets of basis vectors, which suffices by
// multilinearity.
auto verify_vector_object(const VectorObject & o) -> VerifyReport;

// Pushforward along alpha: D -> {0, ..., codomain - 1}.
auto minor_vector_object(const VectorObject & o, const std::vector<std::uint32_t> & alpha, std::uint32_t codomain)
    -> VectorObject;

struct GramRealization {
    std::uint32_t n = 0;
    // One 0/1 vector of length n per label.
    std::vector<ResidueVec> r;
};

// 0/1 vectors r(0), ..., r(labels - 1) such that the weight of the componentwise product
// over any nonempty S of at most k labels equals targets[S] (keys are sorted label sets;
// missing keys mean 0). Subsets are processed by decreasing size, then lexicographically,
// and each deficit is filled with indicator coordinates of that subset.
auto gram_realize(std::uint32_t labels, const std::map<std::vector<std::uint32_t>, Residue> & targets, std::uint32_t p,
    std::uint32_t k) -> GramRealization;

// Shared (V, i) with one vector tuple per LC variable.
struct VectorSolution {
    std::uint32_t p = 2;
    std::uint32_t k = 2;
    std::uint32_t n = 1;
    std::vector<ResidueVec> space_basis;
    std::vector<std::vector<ResidueVec>> vectors;

    auto object(std::uint32_t var) const -> VectorObject;
};

// Every object verifies and every constraint is a pushforward. Throws Error(ShapeMismatch).
auto check_vector_solution(const LcInstance & d, const VectorSolution & s, std::string * violation = nullptr) -> bool;

struct ExtractionInfo {
    std::size_t radical_dimension = 0;
    std::size_t basis_size = 0;
    std::uint32_t anchor_variable = 0;
    std::uint32_t realized_length = 0;
};

// Vectors realizing a level-k tensor on a connected instance. Throws Error(NotConnected),
// Error(InvalidTensor) when the tensor fails check_tensor_solution, and
// Error(SymmetryAssertionFailed) if the form on the chosen basis is inconsistent.
auto extract_vectors(const LcInstance & d, const TensorSolution & t, ExtractionInfo * info = nullptr)
    -> VectorSolution;

// The tensor of weights of k-fold products. Throws Error(InvalidVectorSolution).
auto tensor_from_vectors(const LcInstance & d, const VectorSolution & s) -> TensorSolution;

auto to_json(const VectorSolution & s, const LcInstance & d) -> Json;
auto vector_solution_from_json(const Json & j, const LcInstance & d) -> VectorSolution;

}
