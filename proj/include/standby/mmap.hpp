#pragma once

#include <array>
#include <string>
#include <string_view>

#include "standby/ph.hpp"
#include "standby/state_space.hpp"
#include "standby/unit_kernel.hpp"

namespace standby {

struct SystemModel {
    OnlineUnitModel unit;
    DiscretePH repair;       // corrective (beta1, S1)
    DiscretePH maintenance;  // preventive (beta2, S2)
    DiscretePH vacation;     // (v, V)
    int n = 1;
    int R = 1;

    FactorDims dims() const;
    const DiscretePH& service(Task task) const { return task == Task::Corrective ? repair : maintenance; }
    void validate() const;
};

enum class Label : int { O, A, B, C, D, AD, BD, CD, NS };
inline constexpr int kLabelCount = 9;
inline constexpr std::array<Label, kLabelCount> kAllLabels = {
    Label::O, Label::A, Label::B, Label::C, Label::D, Label::AD, Label::BD, Label::CD, Label::NS};
std::string_view label_name(Label label);

struct MarkedKernel {
    StateSpaceLayout layout;
    std::array<SparseMatrix, kLabelCount> by_label;
    SparseMatrix D;        // sum over labels
    SparseMatrix D_prime;  // D - D^NS
    SparseMatrix Q;        // every return: vacation ends (stay or restart) and interruptions

    const SparseMatrix& operator[](Label label) const { return by_label[static_cast<int>(label)]; }
};

// Assembles all event matrices and Q in one pass. Throws LayoutMismatch if the
// layout was built for other dimensions, NonStochasticResult if D fails the
// row-sum check (tolerance 1e-10).
MarkedKernel build(const SystemModel& model, const StateSpaceLayout& layout);
MarkedKernel build(const SystemModel& model);

SparseMatrix build_Q(const SystemModel& model, const StateSpaceLayout& layout);

// label,row,col,value for every stored nonzero
std::string kernel_to_csv(const MarkedKernel& kernel);

}  // namespace standby
