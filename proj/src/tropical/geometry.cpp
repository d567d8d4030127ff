#include "hypertrop/geometry.hpp"

#include "hypertrop/errors.hpp"

namespace hypertrop {

namespace {

long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw DomainError("direction vector does not fit in a machine integer");
  return v.get_si();
}

}  // namespace

Vec2i primitive_dir(const Rat& dx, const Rat& dy) {
  Int l;
  mpz_lcm(l.get_mpz_t(), dx.get_den_mpz_t(), dy.get_den_mpz_t());
  Int a = dx.get_num() * (l / dx.get_den());
  Int b = dy.get_num() * (l / dy.get_den());
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g == 0) throw DomainError("zero direction");
  return {to_long(a / g), to_long(b / g)};
}

Vec3i primitive_dir(const Rat& dx, const Rat& dy, const Rat& dz) {
  Int l;
  mpz_lcm(l.get_mpz_t(), dx.get_den_mpz_t(), dy.get_den_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dz.get_den_mpz_t());
  Int a = dx.get_num() * (l / dx.get_den());
  Int b = dy.get_num() * (l / dy.get_den());
  Int c = dz.get_num() * (l / dz.get_den());
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) throw DomainError("zero direction");
  return {to_long(a / g), to_long(b / g), to_long(c / g)};
}

Rat lattice_length(const Rat& dx, const Rat& dy, const Vec2i& dir) {
  if (dir[0] != 0) return dx / Rat(dir[0]);
  return dy / Rat(dir[1]);
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace hypertrop
