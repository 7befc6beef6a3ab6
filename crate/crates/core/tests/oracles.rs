//! Worked values for each public operation.

use std::sync::Arc;

use gmrk_core::coupling::{cg, cg_spin4, CgValue, HalfInt, IrrepLabel, MagneticIndex};
use gmrk_core::operators::{
    alpha_of, build_casimir_k, build_casimir_m, build_k, build_m, build_t_closed, build_t_gellmann, build_u,
    cartesian_to_spherical, spherical_to_cartesian, to_su_n, x_vector_of, GellMannConfig,
};
use gmrk_core::repspace::{enumerate_basis, interior_projector, multiplicity_audit, BasisIndex, SpaceSpec};
use gmrk_core::sparse::SparseMatrix;
use gmrk_core::Error;
use num::complex::Complex64;
use num::rational::Ratio;

fn h(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn int(j: i32) -> HalfInt {
    HalfInt::integer(j)
}

fn spin(j: i32) -> IrrepLabel {
    IrrepLabel::Spin3(int(j))
}

fn basis(spec: SpaceSpec) -> Arc<BasisIndex> {
    Arc::new(enumerate_basis(spec).unwrap())
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

mod coupling {
    use super::*;

    #[test]
    fn trivial_partner_is_identity() {
        for tj in 0..8 {
            for m in h(tj).projections() {
                assert_eq!(cg(h(tj), m, HalfInt::ZERO, HalfInt::ZERO, h(tj), m).unwrap(), CgValue::one());
            }
        }
    }

    #[test]
    fn hand_evaluated_values() {
        assert_eq!(cg(h(1), h(1), h(1), h(-1), int(1), int(0)).unwrap(), CgValue::from_ratio(1, 1, 2));
        assert_eq!(cg(int(1), int(1), int(1), int(-1), int(0), int(0)).unwrap(), CgValue::from_ratio(1, 1, 3));
        assert!(cg(int(0), int(0), int(2), int(1), int(1), int(1)).unwrap().is_zero());
    }

    #[test]
    fn negative_spin_is_invalid() {
        assert!(matches!(cg(int(-1), int(0), int(1), int(0), int(1), int(0)), Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn spin4_factorises() {
        let l = |a, b| IrrepLabel::Spin4(int(a), int(b));
        let w = |a, b| MagneticIndex::Two(int(a), int(b));
        let v = cg_spin4(l(1, 0), w(1, 0), l(1, 0), w(-1, 0), l(0, 0), w(0, 0)).unwrap();
        assert_eq!(v, CgValue::from_ratio(1, 1, 3));
        let trivial = cg_spin4(l(0, 0), w(0, 0), l(2, 1), w(-1, 1), l(2, 1), w(-1, 1)).unwrap();
        assert_eq!(trivial, CgValue::one());
        // second factor violates 1 ⊗ 0 ∌ 2
        assert!(cg_spin4(l(1, 1), w(0, 0), l(1, 0), w(0, 0), l(2, 2), w(0, 0)).unwrap().is_zero());
        assert!(matches!(
            cg_spin4(spin(1), MagneticIndex::One(int(0)), l(1, 0), w(0, 0), l(1, 0), w(0, 0)),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn dimensions_and_casimirs() {
        assert_eq!(spin(0).dim(), 1);
        assert_eq!(spin(2).dim(), 5);
        assert_eq!(IrrepLabel::Spin4(int(1), int(1)).dim(), 9);
        assert_eq!(spin(2).casimir2(), Ratio::from_integer(6));
        assert_eq!(spin(1).casimir2(), Ratio::from_integer(2));
        assert_eq!(spin(3).casimir2(), Ratio::from_integer(12));
        assert_eq!(spin(0).casimir2(), Ratio::from_integer(0));
        assert_eq!(IrrepLabel::Spin4(int(0), int(0)).casimir2(), Ratio::from_integer(0));
    }
}

mod repspace {
    use super::*;

    #[test]
    fn state_counts() {
        let full = enumerate_basis(SpaceSpec::full(3, int(1))).unwrap();
        assert_eq!(full.len(), 14);
        assert_eq!(full.states().iter().filter(|s| s.label == IrrepLabel::Spin3(h(1))).count(), 4);
        let coset = enumerate_basis(SpaceSpec::coset(3, int(2), 1)).unwrap();
        assert_eq!(coset.len(), 9);
        assert!(coset.states().iter().all(|s| !s.label.is_spinorial()));
    }

    #[test]
    fn out_of_range_split_is_config_error() {
        assert!(matches!(enumerate_basis(SpaceSpec::coset(3, int(2), 3)), Err(Error::Config(_))));
        assert!(matches!(enumerate_basis(SpaceSpec::coset(3, int(2), 0)), Err(Error::Config(_))));
        assert!(matches!(enumerate_basis(SpaceSpec::full(5, int(2))), Err(Error::UnsupportedN(5))));
    }

    #[test]
    fn interior_projection() {
        let b = enumerate_basis(SpaceSpec::coset(3, int(6), 1)).unwrap();
        assert_eq!(interior_projector(&b, HalfInt::ZERO), (0..b.len()).collect::<Vec<_>>());
        let inner = interior_projector(&b, int(2));
        assert_eq!(inner.len(), 25);
        assert!(inner.iter().all(|&i| b.state(i).label.level() <= int(4)));
        let small = enumerate_basis(SpaceSpec::coset(3, int(2), 1)).unwrap();
        assert!(interior_projector(&small, int(4)).is_empty());
    }

    #[test]
    fn audits() {
        for j_max in [0, 3, 7] {
            let audit = multiplicity_audit(&enumerate_basis(SpaceSpec::coset(3, int(j_max), 1)).unwrap());
            assert_eq!(audit.len(), j_max as usize + 1);
            assert!(audit.values().all(|&c| c == 1));
        }
        let full = multiplicity_audit(&enumerate_basis(SpaceSpec::full(3, int(1))).unwrap());
        assert_eq!(full[&spin(1)], 3);
        // every spec contains the trivial irrep, so the smallest audit has one entry
        let half = multiplicity_audit(&enumerate_basis(SpaceSpec::coset(3, h(1), 1)).unwrap());
        assert_eq!(half.len(), 1);
    }
}

mod operators {
    use super::*;

    #[test]
    fn m_is_block_diagonal_with_weight_on_the_diagonal() {
        let b = basis(SpaceSpec::full(3, int(3)));
        let m = build_m(&b).unwrap();
        for op in &m {
            for (r, c, _) in op.matrix.entries() {
                assert_eq!(b.state(r).label, b.state(c).label);
            }
        }
        for (i, s) in b.states().iter().enumerate() {
            let expected = s.m.parts()[0].to_f64();
            assert!((m[1].matrix.get(i, i).re - expected).abs() < 1e-14);
        }
        let origin = b.block(spin(0)).unwrap().offset;
        assert!(m.iter().all(|op| op.matrix.row(origin).count() == 0));
    }

    #[test]
    fn k_reads_the_left_weight_and_vanishes_on_cosets() {
        let b = basis(SpaceSpec::full(3, int(2)));
        let k = build_k(&b).unwrap();
        for (i, s) in b.states().iter().enumerate() {
            let expected: f64 = s.k.to_string().parse::<HalfInt>().unwrap().to_f64();
            assert!((k[1].matrix.get(i, i).re - expected).abs() < 1e-14, "{s:?}");
        }
        for m_split in [1, 2] {
            let c = basis(SpaceSpec::coset(3, int(5), m_split));
            assert!(build_k(&c).unwrap().iter().all(|op| op.matrix.max_abs() < 1e-12));
        }
    }

    #[test]
    fn u_from_the_origin() {
        let b = basis(SpaceSpec::coset(3, int(4), 1));
        let cfg = GellMannConfig::new(3, 1, zero()).unwrap();
        let u = build_u(&b, &cfg).unwrap();
        let origin = b.block(spin(0)).unwrap().offset;
        let one = b.block(spin(1)).unwrap();
        let two = b.block(spin(2)).unwrap();
        for (mu, op) in u.iter().enumerate() {
            for i in 0..3 {
                assert_eq!(op.matrix.get(one.index(0, i), origin), zero());
            }
            let v = op.matrix.get(two.index(0, mu), origin);
            assert!((v.norm() - (1.0f64 / 5.0).sqrt()).abs() < 1e-14, "{v}");
        }
    }

    #[test]
    fn casimirs_agree_blockwise() {
        let b = basis(SpaceSpec::full(3, int(3)));
        let ck = build_casimir_k(&b).unwrap();
        let cm = build_casimir_m(&b).unwrap();
        assert!(ck.matrix.sub(&cm.matrix).max_abs() < 1e-12);
        let one = b.block(spin(1)).unwrap();
        for r in 0..one.multiplicity() {
            for i in 0..3 {
                let at = one.index(r, i);
                assert!((cm.matrix.get(at, at).re - 2.0).abs() < 1e-13);
            }
        }
        let origin = b.block(spin(0)).unwrap().offset;
        assert_eq!(cm.matrix.row(origin).count(), 0);
    }

    #[test]
    fn t_off_diagonal_blocks_from_casimir_difference() {
        let b = basis(SpaceSpec::coset(3, int(6), 1));
        let cfg = GellMannConfig::new(3, 1, zero()).unwrap();
        let t = build_t_gellmann(&b, &cfg).unwrap();
        let expected = 6.0 / 30f64.sqrt();
        let origin = b.block(spin(0)).unwrap().offset;
        let two = b.block(spin(2)).unwrap();
        for (mu, op) in t.iter().enumerate() {
            let v = op.matrix.get(two.index(0, mu), origin);
            assert!(v.re.abs() < 1e-14 && (v.im - expected).abs() < 1e-13, "{v}");
            // σ = 0: nothing inside a block
            for (r, c, _) in op.matrix.entries() {
                assert_ne!(b.state(r).label, b.state(c).label);
            }
        }
    }

    #[test]
    fn closed_form_selection_rule_and_linear_diagonal() {
        let b = basis(SpaceSpec::coset(3, int(6), 2));
        let at = |s: f64| build_t_closed(&b, &GellMannConfig::new(3, 2, Complex64::new(s, 0.0)).unwrap()).unwrap();
        let (t0, t1, t3) = (at(0.0), at(1.0), at(3.0));
        for op in &t1 {
            for (r, c, _) in op.matrix.entries() {
                let d = b.state(r).label.level() - b.state(c).label.level();
                assert!(d.abs() <= int(2));
            }
        }
        let mut diagonal_entries = 0;
        for ((x0, x1), x3) in t0.iter().zip(&t1).zip(&t3) {
            let slope = x1.matrix.sub(&x0.matrix);
            let triple = x3.matrix.sub(&x0.matrix);
            assert!(triple.sub(&slope.scale(Complex64::new(3.0, 0.0))).max_abs() < 1e-13);
            // within a block the factor is σ alone
            for (r, c, _) in x0.matrix.entries() {
                assert_ne!(b.state(r).label, b.state(c).label);
            }
            diagonal_entries += slope.entries().filter(|&(r, c, _)| b.state(r).label == b.state(c).label).count();
        }
        assert!(diagonal_entries > 0);
    }

    #[test]
    fn alpha_and_x() {
        assert!((alpha_of(3, 1).unwrap() - 0.408248290463863).abs() < 1e-14);
        assert_eq!(alpha_of(4, 2).unwrap(), 0.5);
        assert_eq!(alpha_of(3, 1).unwrap(), alpha_of(3, 2).unwrap());
        assert!(matches!(alpha_of(3, 3), Err(Error::Config(_))));
        assert!(matches!(alpha_of(5, 1), Err(Error::UnsupportedN(5))));

        let x = x_vector_of(3, 1).unwrap();
        let diag = [(2.0f64 / 3.0).sqrt(), -(1.0f64 / 6.0).sqrt(), -(1.0f64 / 6.0).sqrt()];
        for (i, d) in diag.iter().enumerate() {
            assert!((x.cartesian[(i, i)].re - d).abs() < 1e-15);
        }
        assert!(x.cartesian.trace().norm() < 1e-15);
        assert!((x.cartesian.norm() - 1.0).abs() < 1e-15);
        // the 2-3 plane rotation fixes x
        let g = gmrk_core::group::SpinGroup::new(3, Default::default()).unwrap();
        let k = g.defining_generator(1, 2);
        assert!((&k * &x.cartesian - &x.cartesian * &k).norm() < 1e-15);
    }

    #[test]
    fn component_maps_round_trip() {
        let b = basis(SpaceSpec::full(3, int(2)));
        let m = build_m(&b).unwrap();
        let cart = spherical_to_cartesian(&m).unwrap();
        assert!(cart[&(0, 1)].matrix.sub(&m[1].matrix).max_abs() < 1e-14);
        let back = cartesian_to_spherical(&cart).unwrap();
        for (x, y) in back.iter().zip(&m) {
            assert!(x.matrix.sub(&y.matrix).max_abs() < 1e-13);
            assert_eq!(x.tag, y.tag);
        }
        let mut partial = cart.clone();
        partial.retain(|&(a, b), _| (a, b) == (0, 1));
        assert!(matches!(cartesian_to_spherical(&partial), Err(Error::MissingComponent(_))));
    }

    #[test]
    fn su_form_multiplies_by_i() {
        let b = basis(SpaceSpec::coset(3, int(3), 1));
        let t = build_t_gellmann(&b, &GellMannConfig::new(3, 1, Complex64::new(1.0, 0.0)).unwrap()).unwrap();
        let once = to_su_n(&t);
        let twice = to_su_n(&once);
        for ((x, y), z) in t.iter().zip(&once).zip(&twice) {
            assert!(y.matrix.sub(&x.matrix.scale(Complex64::new(0.0, 1.0))).max_abs() == 0.0);
            assert!(z.matrix.add(&x.matrix).max_abs() == 0.0);
        }
        let mut empty = t[0].clone();
        empty.matrix = SparseMatrix::zeros(b.len(), b.len());
        assert_eq!(to_su_n(&[empty])[0].matrix.nnz(), 0);
    }
}
