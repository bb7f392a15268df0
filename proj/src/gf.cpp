#include "wonderful/gf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace wonderful::gf {

namespace detail {

struct FieldData {
  unsigned p = 0;
  unsigned a = 0;
  unsigned q = 0;
  std::vector<unsigned> modulus;  // monic, little-endian
  std::vector<Elem> exp;          // exp[i] = g^i, i in [0, q-1)
  std::vector<std::uint32_t> log;  // log[exp[i]] = i; log[0] unused
  std::vector<Elem> add_table;    // q*q when q <= kAddTableLimit
};

}  // namespace detail

namespace {

constexpr unsigned kMaxDegree = 8;
constexpr unsigned kMaxOrder = 1u << 16;
constexpr unsigned kAddTableLimit = 256;

using Poly = std::vector<unsigned>;  // little-endian coefficients mod p

std::vector<unsigned> unpack(Elem x, unsigned p, unsigned a) {
  std::vector<unsigned> c(a);
  for (unsigned i = 0; i < a; ++i) {
    c[i] = x % p;
    x /= p;
  }
  return c;
}

Elem pack(std::span<const unsigned> c, unsigned p) {
  Elem v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

// r = a mod m over GF(p), m monic.
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const unsigned lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i) {
        a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool divides(const Poly& d, const Poly& f, unsigned p) {
  Poly r = poly_mod(f, d, p);
  for (unsigned c : r)
    if (c != 0) return false;
  return true;
}

// Monic polynomial of the given degree from its lower coefficients.
Poly monic(std::span<const unsigned> lower) {
  Poly f(lower.begin(), lower.end());
  f.push_back(1);
  return f;
}

// Odometer over coefficient tuples with index 0 most significant, i.e.
// lexicographic from the constant term upward.
bool next_tuple(std::vector<unsigned>& c, unsigned p) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

bool irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    std::vector<unsigned> lower(d, 0);
    do {
      if (divides(monic(lower), f, p)) return false;
    } while (next_tuple(lower, p));
  }
  return true;
}

Poly canonical_modulus(unsigned p, unsigned a) {
  std::vector<unsigned> lower(a, 0);
  do {
    Poly f = monic(lower);
    if (irreducible(f, p)) return f;
  } while (next_tuple(lower, p));
  // Unreachable: irreducible polynomials exist in every degree.
  throw Error(ErrorCode::DegreeOutOfRange, "no irreducible polynomial found");
}

Elem slow_mul(Elem x, Elem y, const detail::FieldData& f) {
  auto cx = unpack(x, f.p, f.a);
  auto cy = unpack(y, f.p, f.a);
  Poly prod(2 * f.a - 1, 0);
  for (unsigned i = 0; i < f.a; ++i)
    for (unsigned j = 0; j < f.a; ++j) prod[i + j] = (prod[i + j] + cx[i] * cy[j]) % f.p;
  Poly r = poly_mod(prod, f.modulus, f.p);
  r.resize(f.a, 0);
  return pack(r, f.p);
}

Elem slow_add(Elem x, Elem y, unsigned p, unsigned a) {
  Elem out = 0, scale = 1;
  for (unsigned i = 0; i < a; ++i) {
    out += ((x % p + y % p) % p) * scale;
    x /= p;
    y /= p;
    scale *= p;
  }
  return out;
}

void build_tables(detail::FieldData& f) {
  const unsigned order = f.q - 1;
  f.exp.assign(order, 0);
  f.log.assign(f.q, 0);
  // Smallest primitive element: its powers hit 1 again only after q-1 steps.
  for (Elem g = 1; g < f.q; ++g) {
    Elem x = 1;
    unsigned k = 0;
    for (; k < order; ++k) {
      if (k > 0 && x == 1) break;
      f.exp[k] = x;
      x = slow_mul(x, g, f);
    }
    if (k == order && x == 1) break;
  }
  for (unsigned k = 0; k < order; ++k) f.log[f.exp[k]] = k;
  if (f.q <= kAddTableLimit) {
    f.add_table.resize(static_cast<std::size_t>(f.q) * f.q);
    for (Elem x = 0; x < f.q; ++x)
      for (Elem y = 0; y < f.q; ++y) f.add_table[x * f.q + y] = slow_add(x, y, f.p, f.a);
  }
}

const detail::FieldData* intern(unsigned p, unsigned a) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<detail::FieldData>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{p, a}];
  if (!slot) {
    auto f = std::make_unique<detail::FieldData>();
    f->p = p;
    f->a = a;
    f->q = 1;
    for (unsigned i = 0; i < a; ++i) f->q *= p;
    f->modulus = canonical_modulus(p, a);
    build_tables(*f);
    slot = std::move(f);
  }
  return slot.get();
}

}  // namespace

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<unsigned, unsigned> prime_power(unsigned long long q) {
  require(q >= 2, ErrorCode::NotPrime, "q = " + std::to_string(q) + " is not a prime power");
  unsigned long long p = 2;
  while (q % p != 0) ++p;
  unsigned a = 0;
  unsigned long long rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++a;
  }
  require(rest == 1, ErrorCode::NotPrime, "q = " + std::to_string(q) + " is not a prime power");
  return {static_cast<unsigned>(p), a};
}

Field Field::create(unsigned p, unsigned a) {
  require(gf::is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  require(a >= 1 && a <= kMaxDegree, ErrorCode::DegreeOutOfRange,
          "degree " + std::to_string(a) + " outside [1, 8]");
  unsigned long long q = 1;
  for (unsigned i = 0; i < a; ++i) q *= p;
  require(q <= kMaxOrder, ErrorCode::FieldTooLarge, "GF(" + std::to_string(q) + ") exceeds 2^16");
  return Field(intern(p, a));
}

Field Field::of_order(unsigned q) {
  auto [p, a] = prime_power(q);
  return create(p, a);
}

unsigned Field::characteristic() const { return data_->p; }
unsigned Field::degree() const { return data_->a; }
unsigned Field::order() const { return data_->q; }
const std::vector<unsigned>& Field::modulus() const { return data_->modulus; }

Elem Field::add(Elem x, Elem y) const {
  if (!data_->add_table.empty()) return data_->add_table[x * data_->q + y];
  if (data_->a == 1) return (x + y) % data_->p;
  return slow_add(x, y, data_->p, data_->a);
}

Elem Field::neg(Elem x) const {
  const unsigned p = data_->p;
  if (data_->a == 1) return (p - x) % p;
  Elem out = 0, scale = 1;
  for (unsigned i = 0; i < data_->a; ++i) {
    out += ((p - x % p) % p) * scale;
    x /= p;
    scale *= p;
  }
  return out;
}

Elem Field::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Elem Field::mul(Elem x, Elem y) const {
  if (x == 0 || y == 0) return 0;
  const unsigned order = data_->q - 1;
  return data_->exp[(data_->log[x] + data_->log[y]) % order];
}

Elem Field::inv(Elem x) const {
  require(x != 0, ErrorCode::DivisionByZero, "inverse of zero in " + name());
  const unsigned order = data_->q - 1;
  return data_->exp[(order - data_->log[x]) % order];
}

Elem Field::pow(Elem x, long long e) const {
  const long long order = data_->q - 1;
  if (x == 0) {
    require(e >= 0, ErrorCode::DivisionByZero, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  long long k = (static_cast<long long>(data_->log[x]) * (((e % order) + order) % order)) % order;
  return data_->exp[static_cast<std::size_t>(k)];
}

std::vector<unsigned> Field::coefficients(Elem x) const { return unpack(x, data_->p, data_->a); }

Elem Field::from_coefficients(std::span<const unsigned> coeffs) const {
  require(coeffs.size() == data_->a, ErrorCode::InvalidArgument, "coefficient count != field degree");
  for (unsigned c : coeffs)
    require(c < data_->p, ErrorCode::InvalidArgument, "coefficient not reduced mod p");
  return pack(coeffs, data_->p);
}

FieldElement Field::element(Elem value) const { return FieldElement(*this, value); }

FieldElement Field::from_int(long long value) const {
  const long long p = data_->p;
  return FieldElement(*this, static_cast<Elem>(((value % p) + p) % p));
}

FieldElement Field::generator() const {
  if (data_->a == 1) return FieldElement(*this, 1);
  return FieldElement(*this, data_->p);
}

std::string Field::name() const {
  return "GF(" + std::to_string(data_->p) + (data_->a > 1 ? "^" + std::to_string(data_->a) : "") + ")";
}

FieldElement::FieldElement(Field field, Elem value) : field_(field), value_(value) {
  require(value < field.order(), ErrorCode::InvalidArgument, "element value out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  require(field_ == o.field_, ErrorCode::FieldMismatch,
          "operands from " + field_.name() + " and " + o.field_.name());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.sub(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.mul(value_, o.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.div(value_, o.value_)};
}

FieldEmbedding::FieldEmbedding(Field source, Field target)
    : source_(source), target_(target), generator_image_(target, 1) {
  require(source.is_prime(), ErrorCode::UnsupportedTower,
          "embeddings are only supported from a prime field, got " + source.name());
  require(source.characteristic() == target.characteristic(), ErrorCode::FieldMismatch,
          source.name() + " does not embed in " + target.name());
}

FieldElement FieldEmbedding::embed(const FieldElement& e) const {
  require(e.field() == source_, ErrorCode::FieldMismatch,
          "element of " + e.field().name() + " embedded from " + source_.name());
  // The prime subfield sits as the constant polynomials.
  return FieldElement(target_, e.value());
}

}  // namespace wonderful::gf
