#include "standby/mmap.hpp"

#include <sstream>
#include <vector>

#include "standby/kernels.hpp"

namespace standby {

std::string_view label_name(Label label) {
    static constexpr std::array<std::string_view, kLabelCount> names = {"O", "A", "B", "C", "D", "AD", "BD", "CD", "NS"};
    return names[static_cast<int>(label)];
}

FactorDims SystemModel::dims() const {
    return {unit.m(), unit.t(), unit.eps(), vacation.order(), repair.order(), maintenance.order()};
}

void SystemModel::validate() const {
    unit.validate();
    require_valid(repair, "repair.S1");
    require_valid(maintenance, "maintenance.S2");
    require_valid(vacation, "vacation.V");
    if (n < 1) throw Error(ErrorCode::InvalidThreshold, "fleet.n: must be at least 1");
    if (R < 1 || R > n) throw Error(ErrorCode::InvalidThreshold, "fleet.R: need 1 <= R <= n");
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// What the repairperson does during one step, seen from the source slot.
struct ServerOutcome {
    Matrix step;            // aux -> aux of the same activity, or aux -> exit column
    bool continues = false; // same activity carries on (S or V)
    bool completion = false;
    bool vacation_end = false;
};

class Assembler {
public:
    Assembler(const SystemModel& model, const StateSpaceLayout& layout)
        : model_(model), layout_(layout), kernels_(model.unit) {}

    std::array<Triplets, kLabelCount> labels;
    Triplets q;
    bool want_labels = true;

    void run() {
        for (const Block& b : layout_.blocks())
            for (const QueueSlot& sl : b.slots) visit(b.id, sl);
    }

private:
    const SystemModel& model_;
    const StateSpaceLayout& layout_;
    UnitKernels kernels_;

    std::vector<ServerOutcome> server_outcomes(const BlockId& id, const Queue& queue) const {
        std::vector<ServerOutcome> out;
        if (id.mode == Mode::Vacation) {
            out.push_back({model_.vacation.S, true, false, false});
            out.push_back({model_.vacation.exit(), false, false, true});
        } else if (id.s == 0) {
            out.push_back({Matrix::Ones(1, 1), false, false, false});
        } else {
            const DiscretePH& ph = model_.service(queue.front());
            out.push_back({ph.S, true, false, false});
            out.push_back({ph.exit(), false, true, false});
        }
        return out;
    }

    Matrix start_row(Mode mode, const Queue& queue) const {
        if (mode == Mode::Vacation) return model_.vacation.alpha;
        if (queue.empty()) return Matrix::Ones(1, 1);
        return model_.service(queue.front()).alpha;
    }

    void emit(Label label, bool counts_return, Index row0, Index col0, const Matrix& unit, const Matrix& server) {
        const Index fr = server.rows(), fc = server.cols();
        for (Index i = 0; i < unit.rows(); ++i)
            for (Index j = 0; j < unit.cols(); ++j) {
                const double u = unit(i, j);
                if (u == 0.0) continue;
                for (Index p = 0; p < fr; ++p)
                    for (Index c = 0; c < fc; ++c) {
                        const double f = server(p, c);
                        if (f == 0.0) continue;
                        const Index r = row0 + i * fr + p, col = col0 + j * fc + c;
                        if (want_labels) labels[static_cast<int>(label)].emplace_back(r, col, u * f);
                        if (counts_return) q.emplace_back(r, col, u * f);
                    }
            }
    }

    static Label with_return(Label base) {
        switch (base) {
            case Label::O: return Label::D;
            case Label::A: return Label::AD;
            case Label::B: return Label::BD;
            case Label::C: return Label::CD;
            default: return base;
        }
    }

    void visit(const BlockId& src, const QueueSlot& sl) {
        const bool online = src.s < src.k;
        const int R = layout_.R();
        const auto outcomes = server_outcomes(src, sl.queue);
        const std::array<std::pair<UnitEvent, Label>, 4> events = {{{UnitEvent::NoEvent, Label::O},
                                                                    {UnitEvent::RepairableFailure, Label::A},
                                                                    {UnitEvent::MajorInspection, Label::B},
                                                                    {UnitEvent::NonRepairableFailure, Label::C}}};
        const int n_events = online ? 4 : 1;

        for (int ev = 0; ev < n_events; ++ev) {
            const auto [event, base] = events[ev];
            for (const ServerOutcome& so : outcomes) {
                Queue queue = sl.queue;
                if (so.completion) queue.erase(queue.begin());
                if (event == UnitEvent::RepairableFailure) queue.push_back(Task::Corrective);
                if (event == UnitEvent::MajorInspection) queue.push_back(Task::Preventive);
                int k2 = src.k - (event == UnitEvent::NonRepairableFailure ? 1 : 0);
                const int s2 = static_cast<int>(queue.size());

                // Last unit lost: a new system of n units, repairperson on vacation.
                if (k2 == 0) {
                    const QueueSlot& dst = layout_.slot({layout_.n(), 0, Mode::Vacation, {}});
                    Matrix server = so.continues ? Matrix(so.step * Matrix::Ones(so.step.cols(), 1)) : so.step;
                    emit(Label::NS, so.vacation_end, sl.offset, dst.offset, kernels_.HC,
                         server * model_.vacation.alpha);
                    continue;
                }

                const Matrix* unit = nullptr;
                if (!online) unit = so.completion ? &kernels_.theta : &kernels_.shock_only;
                else if (event == UnitEvent::NoEvent) unit = &kernels_.HO;
                else unit = &kernels_.get(event, k2 - s2 < 1);

                Mode mode2;
                Label label = base;
                bool returns = so.vacation_end;
                if (src.mode == Mode::Workplace) {
                    mode2 = (k2 < R || s2 >= k2 - R + 1) ? Mode::Workplace : Mode::Vacation;
                } else if (k2 < R) {
                    mode2 = Mode::Workplace;  // too few units left: the vacation is cut short
                    if (so.vacation_end) label = with_return(base);
                    returns = true;
                } else if (so.vacation_end) {
                    mode2 = s2 >= k2 - R + 1 ? Mode::Workplace : Mode::Vacation;
                    if (mode2 == Mode::Workplace) label = with_return(base);
                } else {
                    mode2 = Mode::Vacation;
                }

                Matrix server;
                if (so.continues && mode2 == src.mode) server = so.step;
                else if (so.continues) server = so.step * Matrix::Ones(so.step.cols(), 1) * start_row(mode2, queue);
                else server = so.step * start_row(mode2, queue);

                const QueueSlot& dst = layout_.slot({k2, s2, mode2, queue});
                emit(label, returns, sl.offset, dst.offset, *unit, server);
            }
        }
    }
};

SparseMatrix to_sparse(Index n, const Triplets& t) {
    SparseMatrix m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

void check_layout(const SystemModel& model, const StateSpaceLayout& layout) {
    const FactorDims a = model.dims(), b = layout.dims();
    if (a.m != b.m || a.t != b.t || a.eps != b.eps || a.vac != b.vac || a.z1 != b.z1 || a.z2 != b.z2 ||
        layout.n() != model.n || layout.R() != model.R)
        throw Error(ErrorCode::LayoutMismatch, "layout was built for a different model");
}

}  // namespace

MarkedKernel build(const SystemModel& model, const StateSpaceLayout& layout) {
    check_layout(model, layout);
    Assembler as(model, layout);
    as.run();
    const Index n = layout.size();
    MarkedKernel k{layout, {}, SparseMatrix(n, n), SparseMatrix(n, n), to_sparse(n, as.q)};
    for (Label y : kAllLabels) k.by_label[static_cast<int>(y)] = to_sparse(n, as.labels[static_cast<int>(y)]);
    k.D_prime = k[Label::O];
    for (Label y : kAllLabels)
        if (y != Label::O && y != Label::NS) k.D_prime += k[y];
    k.D = k.D_prime + k[Label::NS];

    Vector rs = kernels::row_sums(k.D);
    double worst = (rs.array() - 1.0).abs().maxCoeff();
    if (worst > 1e-10) {
        std::ostringstream os;
        os << "assembled kernel is not stochastic (max row-sum deviation " << worst << ")";
        throw Error(ErrorCode::NonStochasticResult, os.str());
    }
    return k;
}

MarkedKernel build(const SystemModel& model) {
    return build(model, StateSpaceLayout(model.n, model.R, model.dims()));
}

SparseMatrix build_Q(const SystemModel& model, const StateSpaceLayout& layout) {
    check_layout(model, layout);
    Assembler as(model, layout);
    as.want_labels = false;
    as.run();
    return to_sparse(layout.size(), as.q);
}

std::string kernel_to_csv(const MarkedKernel& kernel) {
    std::ostringstream os;
    os.precision(10);
    os << "label,row,col,value\n";
    auto dump = [&](std::string_view name, const SparseMatrix& m) {
        for (Index r = 0; r < m.outerSize(); ++r)
            for (SparseMatrix::InnerIterator it(m, r); it; ++it)
                os << name << ',' << it.row() << ',' << it.col() << ',' << it.value() << '\n';
    };
    for (Label y : kAllLabels) dump(label_name(y), kernel[y]);
    dump("Q", kernel.Q);
    return os.str();
}

}  // namespace standby
