#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "standby/types.hpp"

namespace standby {

enum class Mode : std::uint8_t { Vacation, Workplace };
enum class Task : std::uint8_t { Corrective = 1, Preventive = 2 };
using Queue = std::vector<Task>;

struct BlockId {
    int k = 0;
    int s = 0;
    Mode mode = Mode::Vacation;
    auto operator<=>(const BlockId&) const = default;
};

struct MacroStateId {
    int k = 0;
    int s = 0;
    Mode mode = Mode::Vacation;
    Queue queue;  // length s, head first
    BlockId block() const { return {k, s, mode}; }
    bool operator==(const MacroStateId&) const = default;
};

struct FactorDims {
    Index m = 1, t = 1, eps = 1, vac = 1, z1 = 1, z2 = 1;
    Index repair(Task task) const { return task == Task::Corrective ? z1 : z2; }
};

// Coordinates present depend on the block: (internal, shock, inspection)
// only while a unit is online (s < k); aux is the vacation phase, the repair
// phase of the head of the queue, or absent (-1) for an idle repairperson.
struct Phase {
    int internal = -1;
    int shock = 0;
    int inspection = -1;
    int aux = -1;
    bool operator==(const Phase&) const = default;
};

struct QueueSlot {
    Queue queue;
    Index offset = 0;
    Index dim = 0;
    Index aux_dim = 1;
};

struct Block {
    BlockId id;
    Index offset = 0;
    Index dim = 0;
    std::vector<QueueSlot> slots;  // indexed by queue_code
    std::string name() const;
};

// Queue ordering code: head is the most significant bit, preventive = 1.
std::uint32_t queue_code(const Queue& queue);
Queue queue_from_code(std::uint32_t code, int s);

Index block_dim(const BlockId& id, const FactorDims& dims);
Index slot_dim(const MacroStateId& macro, const FactorDims& dims);

class StateSpaceLayout {
public:
    StateSpaceLayout(int n, int R, FactorDims dims);

    int n() const { return n_; }
    int R() const { return R_; }
    int N(int k) const { return k - R_ + 1; }
    const FactorDims& dims() const { return dims_; }
    Index size() const { return size_; }
    Index online_dim() const { return dims_.m * dims_.t * dims_.eps; }

    const std::vector<Block>& blocks() const { return blocks_; }
    bool has_block(const BlockId& id) const { return index_.count(id) != 0; }
    const Block& block(const BlockId& id) const;
    const QueueSlot& slot(const MacroStateId& macro) const;

    Index level_offset(int k) const;
    Index level_dim(int k) const;

    Index locate(const MacroStateId& macro, const Phase& phase) const;
    std::pair<MacroStateId, Phase> unlocate(Index flat) const;

    std::string to_csv() const;

private:
    int n_, R_;
    FactorDims dims_;
    Index size_ = 0;
    std::vector<Block> blocks_;
    std::map<BlockId, std::size_t> index_;
    std::vector<Index> level_offset_, level_dim_;  // indexed by k
};

bool valid_macro(const BlockId& id, int n, int R);

}  // namespace standby
