#include "jensen/abelian.hpp"

#include <numeric>

namespace jensen {

namespace {

std::int64_t mod(std::int64_t v, std::int64_t d) {
  const std::int64_t r = v % d;
  return r < 0 ? r + d : r;
}

}  // namespace

AbelianTarget::AbelianTarget(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
  for (std::int64_t d : factors_) {
    if (d < 2) throw std::invalid_argument("cyclic factor must be >= 2, got " + std::to_string(d));
  }
}

BigInt AbelianTarget::cardinality() const {
  BigInt n = 1;
  for (std::int64_t d : factors_) n *= static_cast<long>(d);
  return n;
}

std::string AbelianTarget::spec() const {
  if (factors_.empty()) return "Z:1";
  std::string out = "Z:";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(factors_[i]);
  }
  return out;
}

AbElement AbelianTarget::zero() const { return AbElement{std::vector<std::int64_t>(factors_.size(), 0)}; }

AbElement AbelianTarget::add(const AbElement& a, const AbElement& b) const {
  AbElement out = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i)
    out.residues[i] = (a.residues[i] + b.residues[i]) % factors_[i];
  return out;
}

AbElement AbelianTarget::neg(const AbElement& a) const {
  AbElement out = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i) out.residues[i] = mod(-a.residues[i], factors_[i]);
  return out;
}

AbElement AbelianTarget::scale(std::int64_t k, const AbElement& a) const {
  AbElement out = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t d = factors_[i];
    out.residues[i] = mod(mod(k, d) * a.residues[i], d);
  }
  return out;
}

bool AbelianTarget::is_zero(const AbElement& a) const {
  for (std::int64_t r : a.residues)
    if (r != 0) return false;
  return true;
}

AbElement AbelianTarget::reduce(std::vector<std::int64_t> residues) const {
  if (residues.size() != factors_.size()) throw std::invalid_argument("residue vector has wrong length");
  for (std::size_t i = 0; i < factors_.size(); ++i) residues[i] = mod(residues[i], factors_[i]);
  return AbElement{std::move(residues)};
}

bool AbelianTarget::belongs(const AbElement& a) const {
  if (a.residues.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (a.residues[i] < 0 || a.residues[i] >= factors_[i]) return false;
  return true;
}

std::vector<AbElement> AbelianTarget::two_torsion() const {
  // Per factor the solutions of 2x = 0 are {0} or {0, d/2}.
  std::vector<std::vector<std::int64_t>> choices;
  for (std::int64_t d : factors_) {
    if (d % 2 == 0) {
      choices.push_back({0, d / 2});
    } else {
      choices.push_back({0});
    }
  }
  std::vector<AbElement> out{zero()};
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::vector<AbElement> next;
    for (const AbElement& prefix : out) {
      for (std::int64_t c : choices[i]) {
        AbElement e = prefix;
        e.residues[i] = c;
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<AbElement> AbelianTarget::enumerate(std::uint64_t cap) const {
  if (cardinality() > BigInt(static_cast<unsigned long>(cap))) {
    throw CapExceeded("|H| = " + cardinality().get_str() + " exceeds enumeration cap " +
                      std::to_string(cap));
  }
  std::vector<AbElement> out;
  AbElement cur = zero();
  while (true) {
    out.push_back(cur);
    std::size_t i = factors_.size();
    while (i > 0) {
      --i;
      if (++cur.residues[i] < factors_[i]) break;
      cur.residues[i] = 0;
      if (i == 0) return out;
    }
    if (factors_.empty()) return out;
  }
}

std::string AbelianTarget::format(const AbElement& a) const {
  if (a.residues.size() == 1) return std::to_string(a.residues[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < a.residues.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.residues[i]);
  }
  return out + ")";
}

BigInt hom_count_from_factors(const std::vector<std::int64_t>& source_factors, const AbelianTarget& target) {
  BigInt n = 1;
  for (std::int64_t m : source_factors)
    for (std::int64_t d : target.factors()) n *= static_cast<long>(std::gcd(m, d));
  return n;
}

}  // namespace jensen
