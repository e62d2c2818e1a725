#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ddlab/operators.hpp"
#include "ddlab/spaces.hpp"

namespace ddlab {

using SpaceFactory = std::function<SpaceBasis(int k)>;

// head -> S_0 -> S_1 -> ... -> S_n -> 0, with ops[i] : S_i -> S_{i+1}.
// A null head means the complex starts with 0 -> S_0.
struct ComplexSpec {
    std::string name;
    std::string description;
    int dim = 3;
    int k_min = 2;  // smallest valid degree
    int test_k_min = 2;
    int test_k_max = 5;
    SpaceFactory head;
    std::vector<SpaceFactory> spaces;
    std::vector<OperatorSpec> ops;
};

struct SlotReport {
    std::string space;
    std::size_t dim = 0;
    std::size_t rank_in = 0;     // rank of the incoming map (dim head at slot 0)
    std::size_t kernel_out = 0;  // dim of the kernel of the outgoing map
    bool exact = false;
};

struct ExactnessReport {
    std::string name;
    int degree = 0;
    std::string head;
    std::size_t head_dim = 0;
    bool head_in_kernel = true;
    std::vector<SlotReport> slots;
    std::vector<bool> compositions_zero;
    long alternating_sum = 0;  // sum (-1)^i dim S_i
    bool pass = false;
    double seconds = 0;
};

std::vector<ComplexSpec> builtin_complexes();
const ComplexSpec& find_complex(const std::string& name);

// Exact verification of the complex property and of exactness at every slot.
ExactnessReport verify_complex(const ComplexSpec& spec, int k);

// Same check for explicitly given spaces and maps (used by the bubble and
// finite element complexes, whose spaces are not polynomial spaces).
ExactnessReport verify_sequence(const std::string& name, int degree, const SpaceBasis* head,
                                const std::vector<SpaceBasis>& spaces, const std::vector<OperatorSpec>& ops);

// Rank bookkeeping for a chain of exact matrices.
ExactnessReport exactness_from_matrices(const std::string& name, int degree, const std::string& head_name,
                                        std::size_t head_dim, const std::vector<std::string>& space_names,
                                        const std::vector<std::size_t>& dims,
                                        const std::vector<ExactMatrix>& maps);

std::string to_json(const ExactnessReport& r);

}  // namespace ddlab
