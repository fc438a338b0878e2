#include "ktbench/tinyvm.hpp"

#include <array>
#include <stdexcept>
#include <utility>

#include <boost/container/small_vector.hpp>

#include "ktbench/errors.hpp"
#include "ktbench/prg.hpp"

namespace ktbench::tinyvm {

namespace {

template <std::size_t Truncation>
std::optional<BitString> truncated_expander(const BitString& args) {
  BitString full = prg::linear_expander(args, builtin_ids::kPrgGamma);
  if (full.size() < Truncation) return std::nullopt;
  return full.prefix(full.size() - Truncation);
}

Steps read_cost(std::size_t arg_bits) { return arg_bits; }

template <std::size_t... C>
std::vector<Builtin> expander_family(std::index_sequence<C...>) {
  return {Builtin{static_cast<std::uint8_t>(builtin_ids::kCondEpPrg + C),
                  "condep-prg/g8/trunc" + std::to_string(C), &truncated_expander<C>, &read_cost}...};
}

MachineConfig make_default_machine() {
  MachineConfig m;
  m.version = "tinyvm-1";
  m.literal_overhead_c = 1;
  m.builtins = expander_family(std::make_index_sequence<builtin_ids::kMaxTruncation + 1>{});
  return m;
}

enum class Op : std::uint8_t { halt, flip, left, right, emit, emitr, jz, jnz };

// EMITR operand: bit b in the high position, k in the low two bits.
std::size_t run_length(std::uint8_t operand) { return std::size_t{2} << (operand & 3U); }

struct Instr {
  Op op;
  std::uint8_t operand;
};

using InstrList = boost::container::small_vector<Instr, 16>;

// Parses the general instruction stream starting at bit `pos`.
bool parse_instructions(const BitString& bits, std::size_t pos, InstrList& out) {
  out.clear();
  const std::size_t n = bits.size();
  while (pos < n) {
    if (pos + 3 > n) return false;
    const auto op = static_cast<Op>(bits.read_uint(pos, 3));
    pos += 3;
    std::uint8_t operand = 0;
    if (op == Op::emitr) {
      if (pos + 3 > n) return false;
      operand = static_cast<std::uint8_t>(bits.read_uint(pos, 3));
      pos += 3;
    } else if (op == Op::jz || op == Op::jnz) {
      if (pos + 4 > n) return false;
      operand = static_cast<std::uint8_t>(bits.read_uint(pos, 4));
      pos += 4;
    }
    out.push_back({op, operand});
  }
  for (const auto& ins : out) {
    if ((ins.op == Op::jz || ins.op == Op::jnz) && ins.operand > out.size()) return false;
  }
  return true;
}

void run_general(const BitString& bits, Steps t, const MachineConfig& machine, RunResult& out) {
  InstrList program;
  if (!parse_instructions(bits, 2, program)) {
    out.outcome = Outcome::malformed;
    return;
  }
  const auto& costs = machine.costs;
  // Tape cells left of the origin live in `left` (cell -1 at index 0).
  boost::container::small_vector<std::uint8_t, 64> right(1, 0);
  boost::container::small_vector<std::uint8_t, 64> left;
  std::int64_t head = 0;
  auto cell = [&]() -> std::uint8_t& {
    if (head >= 0) {
      const auto i = static_cast<std::size_t>(head);
      if (i >= right.size()) right.resize(i + 1, 0);
      return right[i];
    }
    const auto i = static_cast<std::size_t>(-head - 1);
    if (i >= left.size()) left.resize(i + 1, 0);
    return left[i];
  };

  Steps steps = 0;
  std::size_t pc = 0;
  while (pc < program.size()) {
    const Instr ins = program[pc];
    steps += costs.instruction;
    if (ins.op == Op::emit) steps += costs.emit_bit;
    if (ins.op == Op::emitr) steps += costs.emit_bit * run_length(ins.operand);
    if (steps > t) {
      out.outcome = Outcome::timeout;
      return;
    }
    ++pc;
    switch (ins.op) {
      case Op::halt:
        pc = program.size();
        break;
      case Op::flip:
        cell() ^= 1U;
        break;
      case Op::left:
        --head;
        break;
      case Op::right:
        ++head;
        break;
      case Op::emit:
        out.output.push_back(cell() != 0);
        break;
      case Op::emitr:
        for (std::size_t i = 0; i < run_length(ins.operand); ++i) out.output.push_back((ins.operand & 4U) != 0);
        break;
      case Op::jz:
        if (cell() == 0) pc = ins.operand;
        break;
      case Op::jnz:
        if (cell() != 0) pc = ins.operand;
        break;
    }
  }
  out.outcome = Outcome::output;
  out.steps = steps;
}

}  // namespace

Program::Program(BitString bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("Program: programs have at least one bit");
}

const Builtin* MachineConfig::find(std::uint8_t id) const {
  for (const auto& b : builtins) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

const MachineConfig& default_machine() {
  static const MachineConfig machine = make_default_machine();
  return machine;
}

Program encode_literal(const BitString& x) {
  BitString bits;
  bits.push_back(false);
  bits.append(x);
  return Program(std::move(bits));
}

Program builtin_program(std::uint8_t id, const BitString& args, const MachineConfig& machine) {
  if (machine.find(id) == nullptr) {
    throw ConfigError("builtin_program: unknown builtin id " + std::to_string(id));
  }
  BitString bits;
  bits.push_back(true);
  bits.append_uint(id, 8);
  bits.append(args);
  return Program(std::move(bits));
}

Steps builtin_steps(const Builtin& builtin, std::size_t arg_bits, std::size_t out_bits,
                    const MachineConfig& machine) {
  return machine.costs.instruction + machine.costs.builtin_dispatch + builtin.cost(arg_bits) +
         machine.costs.emit_bit * out_bits;
}

void run_bits(const BitString& bits, Steps t, const MachineConfig& machine, RunResult& out) {
  out.output.clear();
  out.steps = 0;
  const std::size_t n = bits.size();
  if (n == 0) {
    out.outcome = Outcome::malformed;
    return;
  }
  if (!bits[0]) {
    const Steps need = machine.costs.emit_bit * (n - 1);
    if (need > t) {
      out.outcome = Outcome::timeout;
      return;
    }
    out.output = bits.suffix_from(1);
    out.outcome = Outcome::output;
    out.steps = need;
    return;
  }
  if (n < 2) {
    out.outcome = Outcome::malformed;
    return;
  }
  if (!bits[1]) {
    run_general(bits, t, machine, out);
    if (out.outcome != Outcome::output) out.output.clear();
    return;
  }
  if (n < 9) {
    out.outcome = Outcome::malformed;
    return;
  }
  const auto id = static_cast<std::uint8_t>(bits.read_uint(1, 8));
  const Builtin* builtin = machine.find(id);
  if (builtin == nullptr) {
    out.outcome = Outcome::malformed;
    return;
  }
  const std::size_t arg_bits = n - 9;
  // The dispatch and argument read happen before any output, so a budget
  // that cannot cover them times out without evaluating the builtin.
  if (machine.costs.instruction + machine.costs.builtin_dispatch + builtin->cost(arg_bits) > t) {
    out.outcome = Outcome::timeout;
    return;
  }
  auto result = builtin->apply(bits.suffix_from(9));
  if (!result) {
    out.outcome = Outcome::malformed;
    return;
  }
  const Steps need = builtin_steps(*builtin, arg_bits, result->size(), machine);
  if (need > t) {
    out.outcome = Outcome::timeout;
    return;
  }
  out.output = std::move(*result);
  out.outcome = Outcome::output;
  out.steps = need;
}

RunResult run(const Program& program, Steps t, const MachineConfig& machine) {
  RunResult out;
  run_bits(program.bits(), t, machine, out);
  return out;
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::output:
      return "output";
    case Outcome::timeout:
      return "timeout";
    case Outcome::malformed:
      return "malformed";
  }
  return "?";
}

}  // namespace ktbench::tinyvm
