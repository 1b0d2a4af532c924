#include "thetalab/goepel.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "thetalab/error.hpp"

namespace thetalab {

namespace {

// Subgroups of the 64 half characteristics of genus ≤ 3 as membership masks.
using Mask = std::uint64_t;

Mask extend(Mask group, std::uint32_t v) {
  Mask out = group;
  for (std::uint32_t c = 0; c < 64; ++c) {
    if ((group >> c) & 1u) out |= Mask{1} << (c ^ v);
  }
  return out;
}

std::vector<HalfChar> members(int genus, Mask group) {
  std::vector<HalfChar> out;
  for (std::uint32_t c = 0; c < 64; ++c) {
    if ((group >> c) & 1u) out.emplace_back(genus, c);
  }
  return out;
}

// Reduced XOR basis of the span of the codes.
std::vector<std::uint32_t> xor_basis(const std::vector<HalfChar>& gens) {
  std::vector<std::uint32_t> basis;
  for (const HalfChar& g : gens) {
    std::uint32_t v = g.code();
    for (std::uint32_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      for (auto& b : basis) b = std::min(b, b ^ v);
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return basis;
}

int rank_mod2(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [bit](std::uint32_t r) { return (r >> bit) & 1u; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) != rank && ((rows[i] >> bit) & 1u)) {
        rows[i] ^= rows[rank];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool GoepelGroup::contains(HalfChar m) const {
  return std::binary_search(elements.begin(), elements.end(), m);
}

const char* to_string(SystemTag tag) {
  switch (tag) {
    case SystemTag::kAllEven: return "all-even";
    case SystemTag::kAllOdd: return "all-odd";
    case SystemTag::kMixed: return "mixed";
  }
  return "mixed";
}

std::uint64_t goepel_group_count(int genus, int rank) {
  if (rank < 0 || rank > genus) {
    throw ThetaError(ErrorCode::kConstraint, "Göpel rank must satisfy 0 <= r <= g");
  }
  std::uint64_t num = 1, den = 1;
  for (int k = 0; k < rank; ++k) {
    num *= (std::uint64_t{1} << (2 * genus - 2 * k)) - 1;
    den *= (std::uint64_t{1} << (rank - k)) - 1;
  }
  return num / den;
}

std::vector<GoepelGroup> enumerate_goepel_groups(int genus, int rank) {
  if (genus < 1 || genus > 3) {
    throw ThetaError(ErrorCode::kGuardExceeded,
                     "Göpel enumeration is exhaustive only for genus <= 3");
  }
  if (rank < 1 || rank > genus) {
    throw ThetaError(ErrorCode::kConstraint,
                     "Göpel rank must satisfy 1 <= r <= g, got r = " +
                         std::to_string(rank));
  }
  const std::uint32_t total = 1u << (2 * genus);
  std::set<Mask> level{Mask{1}};  // {0}
  for (int k = 0; k < rank; ++k) {
    std::set<Mask> next;
    for (Mask group : level) {
      const auto elems = members(genus, group);
      for (std::uint32_t v = 1; v < total; ++v) {
        if ((group >> v) & 1u) continue;
        const HalfChar hv(genus, v);
        const bool syzygetic = std::all_of(
            elems.begin(), elems.end(),
            [&](HalfChar e) { return pairing(e, hv) == 0; });
        if (syzygetic) next.insert(extend(group, v));
      }
    }
    level = std::move(next);
  }
  std::vector<GoepelGroup> out;
  out.reserve(level.size());
  for (Mask group : level) {
    out.push_back({genus, rank, members(genus, group)});
  }
  std::sort(out.begin(), out.end(), [](const GoepelGroup& a, const GoepelGroup& b) {
    return a.elements < b.elements;
  });
  return out;
}

std::vector<GoepelSystem> goepel_systems(const GoepelGroup& group) {
  std::vector<GoepelSystem> out;
  std::set<std::uint32_t> seen;
  for (const HalfChar& a : enumerate_half_chars(group.genus)) {
    if (seen.count(a.code())) continue;
    GoepelSystem sys;
    sys.base = group;
    for (const HalfChar& e : group.elements) {
      sys.elements.push_back(a ^ e);
      seen.insert((a ^ e).code());
    }
    std::sort(sys.elements.begin(), sys.elements.end());
    sys.representative = sys.elements.front();
    const auto even = std::count_if(sys.elements.begin(), sys.elements.end(),
                                    [](HalfChar m) { return is_even(m); });
    if (even == static_cast<long>(sys.elements.size())) {
      sys.tag = SystemTag::kAllEven;
    } else if (even == 0) {
      sys.tag = SystemTag::kAllOdd;
    } else {
      sys.tag = SystemTag::kMixed;
    }
    out.push_back(std::move(sys));
  }
  return out;
}

SystemCensus expected_census(int genus, int rank) {
  const int sigma = genus - rank;
  SystemCensus c;
  // 2^{σ−1}(2^σ ± 1) written to stay integral at σ = 0.
  c.all_even = ((std::uint64_t{1} << (2 * sigma)) + (std::uint64_t{1} << sigma)) / 2;
  c.all_odd = ((std::uint64_t{1} << (2 * sigma)) - (std::uint64_t{1} << sigma)) / 2;
  c.mixed = (std::uint64_t{1} << (2 * sigma)) * ((std::uint64_t{1} << rank) - 1);
  return c;
}

SystemCensus census(const std::vector<GoepelSystem>& systems) {
  SystemCensus c;
  for (const auto& s : systems) {
    switch (s.tag) {
      case SystemTag::kAllEven: ++c.all_even; break;
      case SystemTag::kAllOdd: ++c.all_odd; break;
      case SystemTag::kMixed: ++c.mixed; break;
    }
  }
  return c;
}

std::vector<HalfChar> span(const std::vector<HalfChar>& generators) {
  if (generators.empty()) return {};
  const int g = generators.front().genus();
  const auto basis = xor_basis(generators);
  std::vector<HalfChar> out;
  out.reserve(std::size_t{1} << basis.size());
  for (std::uint32_t s = 0; s < (1u << basis.size()); ++s) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if ((s >> i) & 1u) v ^= basis[i];
    }
    out.emplace_back(g, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupType group_type(const std::vector<HalfChar>& generators) {
  if (generators.empty()) return {};
  const int g = generators.front().genus();
  for (const auto& x : generators) {
    if (x.genus() != g) {
      throw ThetaError(ErrorCode::kGenusMismatch, "generators of different genus");
    }
  }
  const auto basis = xor_basis(generators);
  const int r = static_cast<int>(basis.size());
  std::vector<std::uint32_t> gram(r, 0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (pairing(HalfChar(g, basis[i]), HalfChar(g, basis[j]))) {
        gram[i] |= 1u << j;
      }
    }
  }
  const int form_rank = rank_mod2(gram);
  return {r, r - form_rank, form_rank / 2};
}

}  // namespace thetalab
