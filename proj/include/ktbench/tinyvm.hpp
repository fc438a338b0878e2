#pragma once

// A fixed, step-counted two-mode machine U(program, 1^t).
//
// Program layout (bits, MSB-first):
//
//   0 x                  literal: emits x verbatim, 1 step per bit
//   1 id[8] args         builtin call: id has its top bit set (0x80..0xFF);
//                        the builtin is applied to args
//   1 0 instr*           general instruction stream over one work tape
//
// The leading 1 of the id byte doubles as the call opcode, so
// builtin_program(id, args) is exactly |args| + 9 bits long.
//
// General instructions (3-bit opcode, optional operand):
//
//   000        HALT
//   001        FLIP    tape[head] ^= 1
//   010        LEFT
//   011        RIGHT
//   100        EMIT    emit tape[head]
//   101 b k[2] EMITR   emit the constant bit b, 2^(k+1) times
//   110 a[4]   JZ      jump to instruction a if tape[head] == 0
//   111 a[4]   JNZ     jump to instruction a if tape[head] == 1
//
// A jump target equal to the instruction count halts; larger targets and
// truncated trailing instructions are malformed. Falling off the end halts.
//
// Step accounting: every executed instruction costs 1 step, every emitted
// bit costs 1 step (so EMIT costs 2), a builtin call costs
// 1 + 8 (dispatch) + cost(args) + |output|. Literal mode costs |x|.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ktbench/bits.hpp"

namespace ktbench::tinyvm {

using Steps = std::uint64_t;

/// A program for the machine; equal bitstrings are equal programs.
class Program {
 public:
  /// Throws std::invalid_argument for the empty bitstring.
  explicit Program(BitString bits);

  const BitString& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool is_literal() const { return !bits_[0]; }

  friend bool operator==(const Program&, const Program&) = default;
  friend auto operator<=>(const Program& a, const Program& b) { return a.bits_ <=> b.bits_; }

 private:
  BitString bits_;
};

struct StepCosts {
  Steps instruction = 1;
  Steps emit_bit = 1;
  Steps builtin_dispatch = 8;
};

/// A registered pure function callable by id. `apply` returns nullopt when
/// the arguments are outside its domain (the run is then malformed).
struct Builtin {
  std::uint8_t id;
  std::string name;
  std::optional<BitString> (*apply)(const BitString& args);
  Steps (*cost)(std::size_t arg_bits);
};

struct MachineConfig {
  std::string version;
  std::size_t literal_overhead_c = 1;
  std::vector<Builtin> builtins;
  StepCosts costs;

  const Builtin* find(std::uint8_t id) const;
};

/// The frozen machine every experiment runs on.
const MachineConfig& default_machine();

/// Builtin ids registered in the default machine.
namespace builtin_ids {
/// The linear-expander condEP-PRG with gamma = 8; id kCondEpPrg + c drops the
/// last c output bits, for c in [0, kMaxTruncation].
inline constexpr std::uint8_t kCondEpPrg = 0x80;
inline constexpr std::uint8_t kMaxTruncation = 9;
inline constexpr int kPrgGamma = 8;
}  // namespace builtin_ids

enum class Outcome { output, timeout, malformed };

struct RunResult {
  Outcome outcome = Outcome::malformed;
  BitString output;  // full emitted tape when outcome == output
  Steps steps = 0;   // steps used (meaningful for output)

  bool ok() const { return outcome == Outcome::output; }
};

Program encode_literal(const BitString& x);

/// Builds 1 || id || args. Throws ConfigError if id is not registered.
Program builtin_program(std::uint8_t id, const BitString& args,
                        const MachineConfig& machine = default_machine());

RunResult run(const Program& program, Steps t, const MachineConfig& machine = default_machine());

/// Same as run() on raw bits; the empty string is malformed. `out` is
/// overwritten and its storage reused, which the enumerators rely on.
void run_bits(const BitString& bits, Steps t, const MachineConfig& machine, RunResult& out);

/// Steps a builtin call needs to halt: 1 + dispatch + cost + |output|.
Steps builtin_steps(const Builtin& builtin, std::size_t arg_bits, std::size_t out_bits,
                    const MachineConfig& machine = default_machine());

const char* to_string(Outcome outcome);

}  // namespace ktbench::tinyvm
