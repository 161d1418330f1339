#include "standby/state_space.hpp"

#include <algorithm>
#include <sstream>

#include "standby/error.hpp"

namespace standby {

std::uint32_t queue_code(const Queue& queue) {
    std::uint32_t code = 0;
    for (Task t : queue) code = (code << 1) | (t == Task::Preventive ? 1u : 0u);
    return code;
}

Queue queue_from_code(std::uint32_t code, int s) {
    Queue q(s);
    for (int pos = s - 1; pos >= 0; --pos, code >>= 1) q[pos] = (code & 1u) ? Task::Preventive : Task::Corrective;
    return q;
}

bool valid_macro(const BlockId& id, int n, int R) {
    if (id.k < 1 || id.k > n || id.s < 0 || id.s > id.k) return false;
    if (id.mode == Mode::Vacation) return id.k >= R;
    return id.k < R || id.s >= id.k - R + 1;
}

namespace {

Index online_or_shock(const BlockId& id, const FactorDims& d) {
    return id.s < id.k ? d.m * d.t * d.eps : d.t;
}

Index slot_aux(const BlockId& id, const Queue& q, const FactorDims& d) {
    if (id.mode == Mode::Vacation) return d.vac;
    if (id.s == 0) return 1;
    return d.repair(q.front());
}

}  // namespace

Index block_dim(const BlockId& id, const FactorDims& d) {
    if (id.k < 1 || id.s < 0 || id.s > id.k) throw Error(ErrorCode::InvalidMacro, "bad macro-state");
    Index base = online_or_shock(id, d);
    if (id.mode == Mode::Vacation) return base * d.vac * (Index{1} << id.s);
    if (id.s == 0) return base;
    return base * (d.z1 + d.z2) * (Index{1} << (id.s - 1));
}

Index slot_dim(const MacroStateId& macro, const FactorDims& d) {
    if (static_cast<int>(macro.queue.size()) != macro.s)
        throw Error(ErrorCode::InvalidMacro, "queue length differs from s");
    return online_or_shock(macro.block(), d) * slot_aux(macro.block(), macro.queue, d);
}

std::string Block::name() const {
    std::ostringstream os;
    os << "E_" << id.s << "^{" << id.k << (id.mode == Mode::Vacation ? ",v}" : ",nv}");
    return os.str();
}

StateSpaceLayout::StateSpaceLayout(int n, int R, FactorDims dims)
    : n_(n), R_(R), dims_(dims), level_offset_(n + 1, 0), level_dim_(n + 1, 0) {
    if (n < 1 || R < 1 || R > n) throw Error(ErrorCode::InvalidThreshold, "need 1 <= R <= n");
    if (dims.m < 1 || dims.t < 1 || dims.eps < 1 || dims.vac < 1 || dims.z1 < 1 || dims.z2 < 1)
        throw Error(ErrorCode::InvalidThreshold, "factor dimensions must be positive");
    if (n > 24) throw Error(ErrorCode::InvalidThreshold, "fleet size too large for ordered queues");

    auto add = [&](BlockId id) {
        Block b;
        b.id = id;
        b.offset = size_;
        Index off = size_;
        const std::uint32_t count = 1u << id.s;
        for (std::uint32_t code = 0; code < count; ++code) {
            QueueSlot sl;
            sl.queue = queue_from_code(code, id.s);
            sl.offset = off;
            sl.aux_dim = slot_aux(id, sl.queue, dims_);
            sl.dim = online_or_shock(id, dims_) * sl.aux_dim;
            off += sl.dim;
            b.slots.push_back(std::move(sl));
        }
        b.dim = off - size_;
        size_ = off;
        index_[id] = blocks_.size();
        blocks_.push_back(std::move(b));
    };

    for (int k = n; k >= 1; --k) {
        level_offset_[k] = size_;
        if (k >= R) {
            for (int s = 0; s <= k; ++s) add({k, s, Mode::Vacation});
            for (int s = k - R + 1; s <= k; ++s) add({k, s, Mode::Workplace});
        } else {
            for (int s = 0; s <= k; ++s) add({k, s, Mode::Workplace});
        }
        level_dim_[k] = size_ - level_offset_[k];
    }
}

const Block& StateSpaceLayout::block(const BlockId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorCode::InvalidMacro, "macro-state not in layout");
    return blocks_[it->second];
}

const QueueSlot& StateSpaceLayout::slot(const MacroStateId& macro) const {
    if (static_cast<int>(macro.queue.size()) != macro.s)
        throw Error(ErrorCode::InvalidMacro, "queue length differs from s");
    return block(macro.block()).slots[queue_code(macro.queue)];
}

Index StateSpaceLayout::level_offset(int k) const {
    if (k < 1 || k > n_) throw Error(ErrorCode::OutOfRange, "level out of range");
    return level_offset_[k];
}

Index StateSpaceLayout::level_dim(int k) const {
    if (k < 1 || k > n_) throw Error(ErrorCode::OutOfRange, "level out of range");
    return level_dim_[k];
}

Index StateSpaceLayout::locate(const MacroStateId& macro, const Phase& ph) const {
    const QueueSlot& sl = slot(macro);
    auto in = [](int v, Index hi) { return v >= 0 && v < hi; };
    Index aux = 0;
    if (macro.mode == Mode::Workplace && macro.s == 0) {
        if (ph.aux != -1 && ph.aux != 0) throw Error(ErrorCode::OutOfRange, "idle repairperson has no repair phase");
    } else {
        if (!in(ph.aux, sl.aux_dim)) throw Error(ErrorCode::OutOfRange, "aux phase out of range");
        aux = ph.aux;
    }
    if (!in(ph.shock, dims_.t)) throw Error(ErrorCode::OutOfRange, "shock phase out of range");
    Index unit = ph.shock;
    if (macro.s < macro.k) {
        if (!in(ph.internal, dims_.m) || !in(ph.inspection, dims_.eps))
            throw Error(ErrorCode::OutOfRange, "unit phase out of range");
        unit = (Index{ph.internal} * dims_.t + ph.shock) * dims_.eps + ph.inspection;
    }
    return sl.offset + unit * sl.aux_dim + aux;
}

std::pair<MacroStateId, Phase> StateSpaceLayout::unlocate(Index flat) const {
    if (flat < 0 || flat >= size_) throw Error(ErrorCode::OutOfRange, "flat index out of range");
    auto bit = std::upper_bound(blocks_.begin(), blocks_.end(), flat,
                                [](Index f, const Block& b) { return f < b.offset; });
    const Block& b = *std::prev(bit);
    auto sit = std::upper_bound(b.slots.begin(), b.slots.end(), flat,
                                [](Index f, const QueueSlot& s) { return f < s.offset; });
    const QueueSlot& sl = *std::prev(sit);
    Index rel = flat - sl.offset;
    MacroStateId macro{b.id.k, b.id.s, b.id.mode, sl.queue};
    Phase ph;
    Index aux = rel % sl.aux_dim, unit = rel / sl.aux_dim;
    bool idle = b.id.mode == Mode::Workplace && b.id.s == 0;
    ph.aux = idle ? -1 : static_cast<int>(aux);
    if (b.id.s < b.id.k) {
        ph.inspection = static_cast<int>(unit % dims_.eps);
        unit /= dims_.eps;
        ph.shock = static_cast<int>(unit % dims_.t);
        ph.internal = static_cast<int>(unit / dims_.t);
    } else {
        ph.shock = static_cast<int>(unit);
    }
    return {macro, ph};
}

std::string StateSpaceLayout::to_csv() const {
    std::ostringstream os;
    os << "block,k,s,mode,queue,offset,dim\n";
    for (const Block& b : blocks_) {
        for (const QueueSlot& sl : b.slots) {
            os << b.name() << ',' << b.id.k << ',' << b.id.s << ','
               << (b.id.mode == Mode::Vacation ? "v" : "nv") << ',';
            for (std::size_t i = 0; i < sl.queue.size(); ++i)
                os << (i ? "-" : "") << static_cast<int>(sl.queue[i]);
            os << ',' << sl.offset << ',' << sl.dim << '\n';
        }
    }
    return os.str();
}

}  // namespace standby
