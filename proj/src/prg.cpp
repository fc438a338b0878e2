#include "ktbench/prg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "ktbench/errors.hpp"
#include "ktbench/rng.hpp"

namespace ktbench::prg {

namespace {

std::uint64_t label_seed(const std::string& name, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) h = (h ^ ch) * 0x100000001b3ULL;
  return mix_seed(h ^ (static_cast<std::uint64_t>(n) << 32));
}

std::uint32_t prefix_bits(std::uint32_t value, std::size_t n, std::size_t w) {
  return w == 0 ? 0 : value >> (n - w);
}

void require_exact_size(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw BudgetExceeded(std::string(what) + ": exact mode supports n <= " + std::to_string(limit));
  }
}

}  // namespace

BitString ToyOwf::eval(const BitString& x) const {
  if (x.size() != n) throw LengthMismatch("ToyOwf::eval: |x| != n");
  return BitString::from_uint((*table)[x.to_uint()], n);
}

const std::vector<std::string>& toy_owf_names() {
  static const std::vector<std::string> names = {"identity",        "constant",        "clear-last-bit",
                                                 "multiply-halves", "random-function", "random-permutation"};
  return names;
}

ToyOwf make_toy_owf(const std::string& name, std::size_t n) {
  if (n == 0 || n > kMaxToyOwfBits) throw ConfigError("toy OWF: n must be in 1..16");
  const std::uint32_t size = std::uint32_t{1} << n;
  const std::uint32_t mask = size - 1;
  std::vector<std::uint32_t> table(size);
  if (name == "identity") {
    std::iota(table.begin(), table.end(), 0U);
  } else if (name == "constant") {
    std::fill(table.begin(), table.end(), 0U);
  } else if (name == "clear-last-bit") {
    for (std::uint32_t x = 0; x < size; ++x) table[x] = x & ~1U;
  } else if (name == "multiply-halves") {
    const std::size_t low = n - n / 2;
    for (std::uint32_t x = 0; x < size; ++x) {
      const std::uint64_t a = x >> low;
      const std::uint64_t b = x & ((std::uint32_t{1} << low) - 1);
      table[x] = static_cast<std::uint32_t>((a * b) & mask);
    }
  } else if (name == "random-function") {
    SeededRng rng(label_seed(name, n));
    for (auto& y : table) y = static_cast<std::uint32_t>(rng.below(size));
  } else if (name == "random-permutation") {
    std::iota(table.begin(), table.end(), 0U);
    SeededRng rng(label_seed(name, n));
    for (std::uint32_t i = size - 1; i > 0; --i) {
      std::swap(table[i], table[rng.below(std::uint64_t{i} + 1)]);
    }
  } else {
    throw ConfigError("unknown toy OWF \"" + name + "\"");
  }
  return ToyOwf{name, n, std::make_shared<const std::vector<std::uint32_t>>(std::move(table))};
}

std::vector<std::uint64_t> preimage_census(const ToyOwf& f) {
  const std::uint32_t size = std::uint32_t{1} << f.n;
  std::vector<std::uint64_t> image_count(size, 0);
  for (std::uint32_t x = 0; x < size; ++x) ++image_count[f(x)];
  std::vector<std::uint64_t> out(size);
  for (std::uint32_t x = 0; x < size; ++x) out[x] = image_count[f(x)];
  return out;
}

bool in_regularity_bin(std::uint64_t count, unsigned r) {
  if (r == 0) return count == 1;
  if (r > 63) return false;
  return (std::uint64_t{1} << (r - 1)) <= count && count <= (std::uint64_t{1} << r);
}

bool RegularityProfile::contains(std::uint32_t x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

RegularityProfile find_regularity(const ToyOwf& f) {
  const auto counts = preimage_census(f);
  std::vector<std::uint64_t> bins(f.n + 1, 0);
  for (auto c : counts) {
    for (unsigned r = 0; r <= f.n; ++r) bins[r] += in_regularity_bin(c, r) ? 1 : 0;
  }
  const auto best = static_cast<unsigned>(std::max_element(bins.begin(), bins.end()) - bins.begin());

  RegularityProfile profile;
  profile.n = f.n;
  profile.r = best;
  for (std::uint32_t x = 0; x < counts.size(); ++x) {
    if (in_regularity_bin(counts[x], best)) profile.members.push_back(x);
  }
  const BigInt total = BigInt(1) << f.n;
  profile.weight = Rational(BigInt(profile.members.size()), total);
  for (auto b : bins) profile.bin_weights.emplace_back(BigInt(b), total);
  return profile;
}

bool profile_is_valid(const ToyOwf& f, const RegularityProfile& profile) {
  const auto counts = preimage_census(f);
  for (auto x : profile.members) {
    if (!in_regularity_bin(counts[x], profile.r)) return false;
  }
  return profile.weight * profile.n >= 1;
}

std::size_t required_expansion(const PrgParams& params) {
  return static_cast<std::size_t>(params.gamma) * ceil_log2(params.n_prime);
}

bool expansion_ok(const PrgParams& params) {
  return params.ell_prime >= params.n_prime && params.ell_prime - params.n_prime >= required_expansion(params);
}

void PrgParams::recompute_lengths() {
  hash_seed_bits = 2 * n;
  const std::size_t shift = static_cast<std::size_t>(alpha_prime) * log_n;
  width_input = r - shift;
  width_output = s_n - r - shift;
  ell = gl_bits * n + 2 * hash_seed_bits + width_input + width_output;
  ell_prime = ell + gl_bits;
  n_prime = log_n + n + 2 * hash_seed_bits + gl_bits * n;
}

PrgParams make_prg_params(const RegularityProfile& profile, unsigned alpha_prime, unsigned gamma,
                          unsigned delta, std::optional<std::size_t> s_n) {
  const std::size_t n = profile.n;
  if (n < 2) throw ConfigError("prg: n must be at least 2");
  if (n > hashing::kMaxFieldBits) throw ConfigError("prg: n exceeds the hash field table");
  if (gamma == 0) throw ConfigError("prg: gamma must be positive");
  PrgParams p;
  p.n = n;
  p.log_n = ceil_log2(n);
  p.r = profile.r;
  p.alpha_prime = alpha_prime;
  p.gamma = gamma;
  p.delta = delta;
  p.s_n = s_n.value_or(n - p.log_n);
  if (p.s_n > n || (BigInt(1) << p.s_n) > BigInt(profile.members.size())) {
    throw ConfigError("prg: s_n exceeds log2 |S_n|");
  }
  const auto shift = static_cast<long long>(alpha_prime) * p.log_n;
  const auto w1 = static_cast<long long>(p.r) - shift;
  const auto w2 = static_cast<long long>(p.s_n) - static_cast<long long>(p.r) - shift;
  if (w1 < 0 || w2 < 0) {
    throw ConfigError("prg: negative truncation width (r - a'L = " + std::to_string(w1) +
                      ", s_n - r - a'L = " + std::to_string(w2) + ")");
  }

  // Smallest c >= 1 with n' <= n^(c+1).
  for (unsigned c = 1; c <= 64; ++c) {
    p.hash_exponent = c;
    p.gamma_prime = (c + 1) * gamma + 2 * alpha_prime + 3;
    p.gl_bits = static_cast<std::size_t>(p.gamma_prime) * p.log_n;
    p.recompute_lengths();
    if (BigInt(p.n_prime) <= boost::multiprecision::pow(BigInt(n), c + 1)) return p;
  }
  throw ConfigError("prg: no hash exponent c <= 64 satisfies n' <= n^(c+1)");
}

BitString SeedBundle::to_bits(const PrgParams& params) const {
  if (x.size() != params.n || sigma1.n != params.n || sigma2.n != params.n ||
      sigma_gl.k() != params.gl_bits) {
    throw LengthMismatch("SeedBundle: field lengths do not match params");
  }
  BitString out;
  out.append_uint(i, params.log_n);
  out.append(x);
  out.append(sigma1.to_bits());
  out.append(sigma2.to_bits());
  out.append(sigma_gl.to_bits());
  return out;
}

SeedBundle SeedBundle::from_bits(const PrgParams& params, const BitString& bits) {
  if (bits.size() != params.n_prime) throw LengthMismatch("SeedBundle: expected n' bits");
  const std::size_t n = params.n;
  SeedBundle b;
  std::size_t pos = 0;
  b.i = static_cast<std::uint32_t>(bits.read_uint(pos, params.log_n));
  pos += params.log_n;
  b.x = bits.slice(pos, n);
  pos += n;
  b.sigma1 = hashing::HashSeed::from_bits(bits.slice(pos, 2 * n));
  pos += 2 * n;
  b.sigma2 = hashing::HashSeed::from_bits(bits.slice(pos, 2 * n));
  pos += 2 * n;
  b.sigma_gl = hardcore::GlSeed::from_bits(bits.suffix_from(pos), n);
  return b;
}

EventSpec make_event(const RegularityProfile& profile) { return EventSpec{profile.r, &profile}; }

bool event_member(const SeedBundle& bundle, const EventSpec& event) {
  if (bundle.i != event.required_i || event.required_set == nullptr) return false;
  if (bundle.x.size() != event.required_set->n) return false;
  return event.required_set->contains(static_cast<std::uint32_t>(bundle.x.to_uint()));
}

std::pair<std::size_t, std::size_t> widths_for(const PrgParams& params, std::uint32_t i) {
  const auto total = static_cast<long long>(params.hashed_bits());
  const auto w1 = std::clamp(static_cast<long long>(i) - static_cast<long long>(params.alpha_prime) * params.log_n,
                             0LL, total);
  return {static_cast<std::size_t>(w1), static_cast<std::size_t>(total - w1)};
}

namespace {

BitString dense_f_at(const ToyOwf& f, const PrgParams& params, std::uint32_t i, const BitString& x,
                     const hashing::HashSeed& sigma1, const hashing::HashSeed& sigma2) {
  if (x.size() != params.n || f.n != params.n || sigma1.n != params.n || sigma2.n != params.n) {
    throw LengthMismatch("dense_f: input or seed length differs from n");
  }
  const auto [w1, w2] = widths_for(params, i);
  BitString out = sigma1.to_bits();
  out.append(sigma2.to_bits());
  out.append(hashing::truncate(hashing::hash(sigma1, x), w1));
  out.append(hashing::truncate(hashing::hash(sigma2, f.eval(x)), w2));
  return out;
}

}  // namespace

BitString dense_f(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params,
                  const BitString& x, const hashing::HashSeed& sigma1, const hashing::HashSeed& sigma2) {
  return dense_f_at(f, params, profile.r, x, sigma1, sigma2);
}

BitString f_prime(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params,
                  const BitString& x, const hashing::HashSeed& sigma1, const hashing::HashSeed& sigma2,
                  const hardcore::GlSeed& sigma_gl) {
  if (sigma_gl.k() != params.gl_bits) throw LengthMismatch("f_prime: GL seed has the wrong k");
  return sigma_gl.to_bits() + dense_f(f, profile, params, x, sigma1, sigma2);
}

BitString cond_ep_prg(const ToyOwf& f, const RegularityProfile& /*profile*/, const PrgParams& params,
                      const SeedBundle& bundle) {
  if (bundle.sigma_gl.k() != params.gl_bits) throw LengthMismatch("cond_ep_prg: GL seed has the wrong k");
  BitString out = bundle.sigma_gl.to_bits();
  out.append(dense_f_at(f, params, bundle.i, bundle.x, bundle.sigma1, bundle.sigma2));
  out.append(hardcore::gl(bundle.x, bundle.sigma_gl));
  return out;
}

Rate1Params Rate1Params::make(std::size_t n, unsigned c0, unsigned gamma) {
  if (c0 == 0) throw ConfigError("rate1: c0 must be positive");
  Rate1Params p;
  p.n = n;
  p.c0 = c0;
  p.delta_prime = 4 * c0;
  p.gamma_prime_outer = 2 * c0 * gamma;
  // Smallest s with s^(2 c0) >= n.
  std::size_t s = 0;
  while (boost::multiprecision::pow(BigInt(s), 2 * c0) < BigInt(n)) ++s;
  p.s1_bits = s;
  if (p.s1_bits > n) throw ConfigError("rate1: |s1| exceeds n");
  return p;
}

BitString rate1_pad(const std::function<BitString(const BitString&)>& inner, const BitString& s,
                    const Rate1Params& split) {
  if (split.s1_bits > split.n || split.s1_bits == 0) throw ConfigError("rate1_pad: invalid split");
  if (s.size() != split.n) throw ConfigError("rate1_pad: |s| differs from the split's n");
  return s.prefix(split.s0_bits()) + inner(s.suffix_from(split.s0_bits()));
}

BitString all_lengths_wrapper(const StructuredFamily& g, const BitString& x_prime) {
  if (g.lengths.empty() || x_prime.size() < g.lengths.front()) {
    throw ConfigError("all_lengths_wrapper: input shorter than the minimum structured length");
  }
  const auto it = std::upper_bound(g.lengths.begin(), g.lengths.end(), x_prime.size());
  const std::size_t len = *std::prev(it);
  return g.eval(x_prime.prefix(len)) + x_prime.suffix_from(len);
}

hardcore::GlSeed expander_vectors(std::size_t n, std::size_t k) {
  hardcore::GlSeed seed;
  if (n == 0) return seed;
  SeededRng rng(label_seed("linear-expander", n));
  while (seed.vectors.size() < k) {
    BitString v = rng.bits(n);
    if (v.popcount() != 0) seed.vectors.push_back(std::move(v));
  }
  return seed;
}

namespace {

// Word-packed expander vectors for |s| <= 64, cached per (n, k).
const std::vector<std::uint64_t>& packed_expander(std::size_t n, std::size_t k) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint64_t>> cache;
  const std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({n, k});
  if (inserted) {
    for (const auto& v : expander_vectors(n, k).vectors) it->second.push_back(v.to_uint());
  }
  return it->second;
}

}  // namespace

BitString linear_expander(const BitString& s, int gamma) {
  if (gamma < 0) throw ConfigError("linear_expander: gamma must be >= 0");
  const std::size_t n = s.size();
  const std::size_t k = static_cast<std::size_t>(gamma) * ceil_log2(n);
  if (n <= 64) {
    const std::uint64_t x = n == 0 ? 0 : s.to_uint();
    BitString out = s;
    for (auto v : packed_expander(n, k)) out.push_back((std::popcount(x & v) & 1) != 0);
    return out;
  }
  return s + hardcore::gl(s, expander_vectors(n, k));
}

bool within_poly_bound(const Rational& sd, unsigned coeff, std::size_t n, unsigned alpha_prime) {
  return sd * sd * Rational(boost::multiprecision::pow(BigInt(n), alpha_prime)) <= Rational(coeff * coeff);
}

DensityReport density_census(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params) {
  require_exact_size(params.n, 5, "density_census");
  const std::size_t n = params.n;
  const std::size_t w1 = params.width_input;
  const std::size_t w2 = params.width_output;
  const std::size_t total_width = w1 + w2;
  const hashing::Gf2Field field(static_cast<unsigned>(n));
  const std::uint32_t order = field.order();
  const auto& members = profile.members;
  const std::uint64_t s = members.size();

  // h1[(a,b)][j] = [h_{a,b}(x_j)]_{w1}; h2 likewise on f(x_j).
  const std::size_t seeds = std::size_t{order} * order;
  std::vector<std::uint32_t> h1(seeds * s), h2(seeds * s);
  for (std::uint32_t a = 0; a < order; ++a) {
    for (std::uint32_t b = 0; b < order; ++b) {
      const std::size_t row = (std::size_t{a} * order + b) * s;
      for (std::size_t j = 0; j < s; ++j) {
        h1[row + j] = prefix_bits(hashing::hash_value(field, a, b, members[j]), n, w1);
        h2[row + j] = prefix_bits(hashing::hash_value(field, a, b, f(members[j])), n, w2);
      }
    }
  }

  // Per seed pair with joint counts c(u,v) over S and marginal m(v):
  //   2 SD(REAL, U)     = sum_{u,v} |c 2^W  - s|   / (s 2^W)
  //   2 SD(REAL, HYB1)  = sum_{u,v} |c 2^w1 - m(v)| / (s 2^w1)
  //   2 SD(HYB1, HYB2)  = sum_v    |m 2^w2 - s|   / (s 2^w2)
  std::uint64_t real_acc = 0, hyb1_acc = 0, hyb2_acc = 0;
  const std::uint32_t cells = std::uint32_t{1} << total_width;
  const std::uint32_t cols = std::uint32_t{1} << w2;
  std::vector<std::int64_t> joint(cells), marginal(cols);
  auto absdiff = [](std::int64_t a, std::int64_t b) { return static_cast<std::uint64_t>(a > b ? a - b : b - a); };
  for (std::size_t s1 = 0; s1 < seeds; ++s1) {
    const std::uint32_t* row1 = &h1[s1 * s];
    for (std::size_t s2 = 0; s2 < seeds; ++s2) {
      const std::uint32_t* row2 = &h2[s2 * s];
      std::fill(joint.begin(), joint.end(), 0);
      std::fill(marginal.begin(), marginal.end(), 0);
      for (std::size_t j = 0; j < s; ++j) {
        ++joint[(row1[j] << w2) | row2[j]];
        ++marginal[row2[j]];
      }
      const auto si = static_cast<std::int64_t>(s);
      for (std::uint32_t cell = 0; cell < cells; ++cell) {
        real_acc += absdiff(joint[cell] << total_width, si);
        hyb1_acc += absdiff(joint[cell] << w1, marginal[cell & (cols - 1)]);
      }
      for (std::uint32_t v = 0; v < cols; ++v) hyb2_acc += absdiff(marginal[v] << w2, si);
    }
  }

  const BigInt pairs = BigInt(seeds) * seeds;
  DensityReport report;
  report.sd_real_uniform = Rational(BigInt(real_acc), 2 * pairs * s * (BigInt(1) << total_width));
  report.sd_real_hyb1 = Rational(BigInt(hyb1_acc), 2 * pairs * s * (BigInt(1) << w1));
  report.sd_hyb1_hyb2 = Rational(BigInt(hyb2_acc), 2 * pairs * s * (BigInt(1) << w2));
  const long double scale = std::pow(static_cast<long double>(n), params.alpha_prime / 2.0L);
  report.density_bound = 3 / scale;
  report.hyb1_bound = 2 / scale;
  report.hyb2_bound = 1 / scale;
  report.density_ok = within_poly_bound(report.sd_real_uniform, 3, n, params.alpha_prime);
  report.hyb1_ok = within_poly_bound(report.sd_real_hyb1, 2, n, params.alpha_prime);
  report.hyb2_ok = within_poly_bound(report.sd_hyb1_hyb2, 1, n, params.alpha_prime);
  return report;
}

stats::ExactDistribution dense_f_distribution(const ToyOwf& f, const RegularityProfile& profile,
                                              const PrgParams& params) {
  require_exact_size(params.n, 4, "dense_f_distribution");
  const auto n = static_cast<unsigned>(params.n);
  const std::uint32_t order = std::uint32_t{1} << n;
  stats::ExactDistribution out(4 * params.n + params.hashed_bits());
  for (auto x : profile.members) {
    const BitString xb = BitString::from_uint(x, n);
    for (std::uint32_t a1 = 0; a1 < order; ++a1) {
      for (std::uint32_t b1 = 0; b1 < order; ++b1) {
        for (std::uint32_t a2 = 0; a2 < order; ++a2) {
          for (std::uint32_t b2 = 0; b2 < order; ++b2) {
            out.add(dense_f(f, profile, params, xb, {a1, b1, n}, {a2, b2, n}));
          }
        }
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> subspaces(std::size_t n) {
  if (n > 6) throw BudgetExceeded("subspaces: n must be <= 6");
  const std::uint32_t size = std::uint32_t{1} << n;
  std::set<std::uint64_t> seen{1};  // {0}
  std::vector<std::uint64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto space : frontier) {
      for (std::uint32_t v = 1; v < size; ++v) {
        if ((space >> v) & 1U) continue;
        std::uint64_t grown = space;
        for (std::uint32_t u = 0; u < size; ++u) {
          if ((space >> u) & 1U) grown |= std::uint64_t{1} << (u ^ v);
        }
        if (seen.insert(grown).second) next.push_back(grown);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

long double kernel_probability(std::size_t n, std::size_t k, std::size_t kernel_dim) {
  if (kernel_dim > n) return 0;
  const std::size_t rank = n - kernel_dim;
  if (rank > k) return 0;
  long double p = std::pow(2.0L, -static_cast<long double>(k * kernel_dim));
  for (std::size_t i = 0; i < rank; ++i) {
    p *= 1 - std::pow(2.0L, static_cast<long double>(i) - static_cast<long double>(k));
  }
  return p;
}

EntropyReport entropy_census(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params) {
  require_exact_size(params.n, 4, "entropy_census");
  const std::size_t n = params.n;
  const std::size_t k = params.gl_bits;
  const std::size_t w1 = params.width_input;
  const std::size_t w2 = params.width_output;
  const hashing::Gf2Field field(static_cast<unsigned>(n));
  const std::uint32_t order = field.order();
  const auto& members = profile.members;
  const std::size_t s = members.size();

  struct Kernel {
    long double probability;
    std::vector<std::uint32_t> coset;  // per member: min over the coset x + K
  };
  std::vector<Kernel> kernels;
  for (auto space : subspaces(n)) {
    Kernel kernel;
    const auto dim = static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(std::popcount(space))));
    kernel.probability = kernel_probability(n, k, dim);
    if (kernel.probability == 0) continue;
    for (auto x : members) {
      std::uint32_t label = x;
      for (std::uint32_t u = 0; u < order; ++u) {
        if ((space >> u) & 1U) label = std::min(label, x ^ u);
      }
      kernel.coset.push_back(label);
    }
    kernels.push_back(std::move(kernel));
  }

  std::vector<long double> c_log_c(s + 1, 0);
  for (std::size_t c = 2; c <= s; ++c) c_log_c[c] = c * std::log2(static_cast<long double>(c));
  const long double log_s = std::log2(static_cast<long double>(s));

  std::vector<std::uint32_t> tau(s);
  std::vector<std::uint32_t> counts(std::size_t{1} << (w1 + w2 + n), 0);
  std::vector<std::uint32_t> touched;
  auto entropy_of = [&](auto&& key_of) {
    touched.clear();
    for (std::size_t j = 0; j < s; ++j) {
      const auto key = key_of(j);
      if (counts[key]++ == 0) touched.push_back(key);
    }
    long double acc = 0;
    for (auto key : touched) {
      acc += c_log_c[counts[key]];
      counts[key] = 0;
    }
    return log_s - acc / static_cast<long double>(s);
  };

  long double tail_sum = 0;   // sum over seeds of H(tau(X))
  long double joint_sum = 0;  // sum over seeds of E_K H(tau(X), X + K)
  for (std::uint32_t a1 = 0; a1 < order; ++a1) {
    for (std::uint32_t b1 = 0; b1 < order; ++b1) {
      for (std::uint32_t a2 = 0; a2 < order; ++a2) {
        for (std::uint32_t b2 = 0; b2 < order; ++b2) {
          for (std::size_t j = 0; j < s; ++j) {
            const auto u = prefix_bits(hashing::hash_value(field, a1, b1, members[j]), n, w1);
            const auto v = prefix_bits(hashing::hash_value(field, a2, b2, f(members[j])), n, w2);
            tau[j] = (u << w2) | v;
          }
          tail_sum += entropy_of([&](std::size_t j) { return tau[j]; });
          for (const auto& kernel : kernels) {
            joint_sum += kernel.probability *
                         entropy_of([&](std::size_t j) { return (tau[j] << n) | kernel.coset[j]; });
          }
        }
      }
    }
  }

  const long double seed_pairs = std::pow(static_cast<long double>(order), 4);
  const auto seed_bits = static_cast<long double>(k * n + 2 * params.hash_seed_bits);
  EntropyReport report;
  report.ell = params.ell;
  report.n_prime = params.n_prime;
  report.h_f_prime = seed_bits + tail_sum / seed_pairs;
  report.h_generator = seed_bits + joint_sum / seed_pairs;
  report.entropy_loss = static_cast<long double>(params.n_prime) - report.h_generator;
  report.loss_bound = static_cast<long double>((2 * params.alpha_prime + 4) * ceil_log2(params.n_prime));
  report.entropy_ok = report.h_generator >= static_cast<long double>(params.ell) - 2 - stats::kEntropySlack;
  report.loss_ok = report.entropy_loss <= report.loss_bound + stats::kEntropySlack;
  return report;
}

SampledReport sampled_census(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params,
                             std::uint64_t seed, std::uint64_t samples) {
  if (samples == 0) throw ConfigError("sampled_census: samples must be >= 1");
  const std::size_t n = params.n;
  const std::size_t w1 = params.width_input;
  const std::size_t w2 = params.width_output;
  const hashing::Gf2Field field(static_cast<unsigned>(n));
  const std::uint32_t order = field.order();
  SeededRng rng(seed);
  std::vector<std::uint64_t> tail(std::size_t{1} << (w1 + w2), 0);
  std::vector<std::uint64_t> ones(params.gl_bits, 0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto x = profile.members[rng.below(profile.members.size())];
    const auto a1 = static_cast<std::uint32_t>(rng.below(order));
    const auto b1 = static_cast<std::uint32_t>(rng.below(order));
    const auto a2 = static_cast<std::uint32_t>(rng.below(order));
    const auto b2 = static_cast<std::uint32_t>(rng.below(order));
    const auto u = prefix_bits(hashing::hash_value(field, a1, b1, x), n, w1);
    const auto v = prefix_bits(hashing::hash_value(field, a2, b2, f(x)), n, w2);
    ++tail[(u << w2) | v];
    for (auto& one : ones) {
      const auto vec = static_cast<std::uint32_t>(rng.below(order));
      one += std::popcount(x & vec) & 1;
    }
  }
  SampledReport report;
  report.seed = seed;
  report.samples = samples;
  report.hoeffding_epsilon = stats::hoeffding_epsilon(samples);
  const double cell = 1.0 / static_cast<double>(tail.size());
  double acc = 0;
  for (auto c : tail) acc += std::abs(static_cast<double>(c) / static_cast<double>(samples) - cell);
  report.tail_sd_estimate = acc / 2;
  for (auto one : ones) report.gl_bit_frequency.push_back(static_cast<double>(one) / static_cast<double>(samples));
  return report;
}

}  // namespace ktbench::prg
