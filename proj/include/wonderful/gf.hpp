#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wonderful/error.hpp"

/// Exact arithmetic in GF(p^a).
///
/// An element is stored as the integer sum_i c_i p^i of its coefficients over
/// GF(p) in the polynomial basis 1, x, ..., x^{a-1}, where x is a root of the
/// field modulus.  This packed value doubles as the canonical sort key for
/// everything built on top (linear forms, subspace matrices).
namespace wonderful::gf {

using Elem = std::uint32_t;

namespace detail {
struct FieldData;
}

class FieldElement;

/// Handle to an interned field.  Fields are created once per (p, a) and live
/// for the rest of the process, so handles are cheap to copy and compare.
class Field {
 public:
  /// The canonical GF(p^a): the modulus is the lexicographically smallest
  /// monic irreducible polynomial of degree a, coefficients compared from the
  /// constant term upward.
  static Field create(unsigned p, unsigned a);

  /// GF(q) for a prime power q.
  static Field of_order(unsigned q);

  unsigned characteristic() const;
  unsigned degree() const;
  unsigned order() const;
  bool is_prime() const { return degree() == 1; }

  /// Monic modulus, little-endian, length degree() + 1.
  const std::vector<unsigned>& modulus() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, long long e) const;
  Elem frobenius(Elem x) const { return pow(x, characteristic()); }

  /// Coefficients over GF(p), little-endian, length degree().
  std::vector<unsigned> coefficients(Elem x) const;
  Elem from_coefficients(std::span<const unsigned> coeffs) const;

  FieldElement element(Elem value) const;
  FieldElement from_int(long long value) const;

  /// The modulus root x for a > 1.  A prime field has modulus x, whose root 0
  /// generates nothing, so there it is 1.
  FieldElement generator() const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

 private:
  explicit Field(const detail::FieldData* data) : data_(data) {}
  const detail::FieldData* data_;
  friend class FieldElement;
};

/// A field element tagged with its field.  Binary operations across distinct
/// fields throw FieldMismatch.
class FieldElement {
 public:
  FieldElement(Field field, Elem value);

  const Field& field() const { return field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  std::vector<unsigned> coefficients() const { return field_.coefficients(value_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  FieldElement inv() const { return {field_, field_.inv(value_)}; }
  FieldElement pow(long long e) const { return {field_, field_.pow(value_, e)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  void check_same(const FieldElement& o) const;
  Field field_;
  Elem value_;
};

/// Canonical unital map GF(p) -> GF(p^m).  Only a prime source is supported.
class FieldEmbedding {
 public:
  FieldEmbedding(Field source, Field target);

  const Field& source() const { return source_; }
  const Field& target() const { return target_; }
  /// Image of the source generator (1, since the source is prime).
  const FieldElement& generator_image() const { return generator_image_; }

  FieldElement embed(const FieldElement& e) const;
  Elem embed_raw(Elem e) const { return e; }

 private:
  Field source_;
  Field target_;
  FieldElement generator_image_;
};

inline FieldElement embed(const FieldElement& e, const FieldEmbedding& emb) { return emb.embed(e); }

bool is_prime(unsigned long long n);

/// q = p^a -> (p, a); throws NotPrime when q is not a prime power.
std::pair<unsigned, unsigned> prime_power(unsigned long long q);

}  // namespace wonderful::gf
