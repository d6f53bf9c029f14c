#include "mubcert/subalgebra.hpp"

namespace mubcert {

const char* kind_name(SubalgebraKind kind) {
  switch (kind) {
    case SubalgebraKind::Masa: return "masa";
    case SubalgebraKind::Factor: return "factor";
    case SubalgebraKind::ProductFactor0: return "product_factor_0";
    case SubalgebraKind::ProductFactor1: return "product_factor_1";
  }
  return "unknown";
}

Subspace product_subspace_0(std::uint32_t p) {
  return Subspace::from_basis(Vec4::from_values({1, 0, 0, 0}, p),
                              Vec4::from_values({0, 1, 0, 0}, p));
}

Subspace product_subspace_1(std::uint32_t p) {
  return Subspace::from_basis(Vec4::from_values({0, 0, 1, 0}, p),
                              Vec4::from_values({0, 0, 0, 1}, p));
}

Subspace phi(const Gl2& m) {
  const std::uint32_t p = m.modulus();
  const Mat2& mm = m.mat();
  // Columns of M land in the last two coordinates.
  Vec4 u(Residue(0, p), Residue(1, p), mm.at(0, 0), mm.at(1, 0));
  Vec4 v(Residue(1, p), Residue(0, p), mm.at(0, 1), mm.at(1, 1));
  return Subspace::from_basis(u, v);
}

Gl2 phi_inverse(const Subspace& s) {
  const Vec4& r0 = s.row(0);
  const Vec4& r1 = s.row(1);
  // Canonical form of a member of the phi range: (1,0,y1,y2), (0,1,x1,x2).
  const bool pivots_in_front = r0[0].value() == 1 && r0[1].value() == 0 &&
                               r1[0].value() == 0 && r1[1].value() == 1;
  if (!pivots_in_front) {
    throw Error(Errc::not_in_s, "subspace meets F1 nontrivially");
  }
  Mat2 m(r1[2], r0[2], r1[3], r0[3]);
  if (m.det().is_zero()) {
    throw Error(Errc::not_in_s, "subspace meets F0 nontrivially");
  }
  return Gl2(m);
}

SubalgebraKind classify(const Subspace& s) {
  const std::uint32_t p = s.modulus();
  if (s == product_subspace_0(p)) return SubalgebraKind::ProductFactor0;
  if (s == product_subspace_1(p)) return SubalgebraKind::ProductFactor1;
  if (symplectic_form(s.row(0), s.row(1)).is_zero()) {
    return SubalgebraKind::Masa;
  }
  return SubalgebraKind::Factor;
}

Gl2 commutant(const Gl2& m) {
  return Gl2(m.mat().scaled(mod_inv(m.det())));
}

Subspace symplectic_complement(const Subspace& s) {
  const std::uint32_t p = s.modulus();
  // Solve c(row_i, v) = 0. With row (a,b,c,d) the constraint on
  // v = (v1,v2,v3,v4) is a*v2 - b*v1 + c*v4 - d*v3 = 0.
  std::vector<Vec4> kernel;
  for (std::uint32_t v1 = 0; v1 < p && kernel.size() < 2; ++v1) {
    for (std::uint32_t v2 = 0; v2 < p && kernel.size() < 2; ++v2) {
      for (std::uint32_t v3 = 0; v3 < p && kernel.size() < 2; ++v3) {
        for (std::uint32_t v4 = 0; v4 < p && kernel.size() < 2; ++v4) {
          Vec4 v = Vec4::from_values({v1, v2, v3, v4}, p);
          if (v.is_zero()) continue;
          if (!symplectic_form(s.row(0), v).is_zero()) continue;
          if (!symplectic_form(s.row(1), v).is_zero()) continue;
          if (kernel.size() == 1) {
            // Keep only vectors independent from the first solution.
            bool dependent = false;
            for (std::uint32_t k = 0; k < p; ++k) {
              if (kernel[0].scaled(Residue(k, p)) == v) {
                dependent = true;
                break;
              }
            }
            if (dependent) continue;
          }
          kernel.push_back(v);
        }
      }
    }
  }
  if (kernel.size() != 2) {
    throw Error(Errc::dependent_vectors, "degenerate symplectic complement");
  }
  return Subspace::from_basis(kernel[0], kernel[1]);
}

namespace {

void require_sl2(const Gl2& m, const char* who) {
  if (m.det().value() != 1) {
    throw Error(Errc::not_sl2, std::string(who) + " requires determinant 1");
  }
}

}  // namespace

bool sl2_pair_complementary(const Gl2& a, const Gl2& b) {
  require_sl2(a, "sl2_pair_complementary");
  require_sl2(b, "sl2_pair_complementary");
  return !(a.mat() - b.mat()).det().is_zero();
}

bool has_order_p(const Gl2& m) {
  require_sl2(m, "has_order_p");
  const Mat2 id = Mat2::identity(m.modulus());
  if (m.mat() == id) return false;
  return (m.mat() - id).det().is_zero();
}

SubalgebraDesc SubalgebraDesc::from_gl2(const Gl2& m) {
  Subspace s = phi(m);
  return SubalgebraDesc{classify(s), s, m};
}

SubalgebraDesc SubalgebraDesc::from_subspace(const Subspace& s) {
  SubalgebraKind kind = classify(s);
  std::optional<Gl2> rep;
  const std::uint32_t p = s.modulus();
  if (intersect_trivially(s, product_subspace_0(p)) &&
      intersect_trivially(s, product_subspace_1(p))) {
    rep = phi_inverse(s);
  }
  return SubalgebraDesc{kind, s, rep};
}

SubalgebraDesc SubalgebraDesc::product_factor_0(std::uint32_t p) {
  return SubalgebraDesc{SubalgebraKind::ProductFactor0, product_subspace_0(p),
                        std::nullopt};
}

SubalgebraDesc SubalgebraDesc::product_factor_1(std::uint32_t p) {
  return SubalgebraDesc{SubalgebraKind::ProductFactor1, product_subspace_1(p),
                        std::nullopt};
}

bool SubalgebraDesc::operator==(const SubalgebraDesc& rhs) const {
  return kind == rhs.kind && subspace == rhs.subspace &&
         gl2_rep == rhs.gl2_rep;
}

SubalgebraDesc commutant(const SubalgebraDesc& s) {
  switch (s.kind) {
    case SubalgebraKind::ProductFactor0:
      return SubalgebraDesc::product_factor_1(s.modulus());
    case SubalgebraKind::ProductFactor1:
      return SubalgebraDesc::product_factor_0(s.modulus());
    case SubalgebraKind::Masa:
      return s;
    case SubalgebraKind::Factor:
      return SubalgebraDesc::from_subspace(symplectic_complement(s.subspace));
  }
  throw Error(Errc::invalid_config, "unreachable subalgebra kind");
}

}  // namespace mubcert
