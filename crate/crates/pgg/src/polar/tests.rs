use std::collections::BTreeSet;

use super::*;
use crate::algebra::matrix::all_vectors;
use crate::algebra::{FormKind, Mat};

pub(crate) fn sp(dim: usize, q: u16) -> Arc<PolarSpace> {
    PolarSpace::from_descriptor(&GeometryDescriptor::parse(&format!("sp:{dim}:{q}")).unwrap())
        .unwrap()
}

pub(crate) fn oplus(dim: usize, q: u16) -> Arc<PolarSpace> {
    PolarSpace::from_descriptor(&GeometryDescriptor::parse(&format!("o+:{dim}:{q}")).unwrap())
        .unwrap()
}

#[test]
fn thin_rank4_has_eight_points_with_opposite_noncollinearity() {
    let ps = PolarSpace::thin(4).unwrap();
    assert_eq!(ps.num_points(), 8);
    for i in 0..8u32 {
        for j in 0..8u32 {
            if i == j {
                continue;
            }
            let si = ps.point(i).symbols()[0];
            let sj = ps.point(j).symbols()[0];
            assert_eq!(ps.collinear(i, j), sj != -si);
        }
    }
    assert_eq!(ps.rank(), 4);
}

#[test]
fn sp42_has_fifteen_points_rank_two() {
    let ps = sp(4, 2);
    // oracle: every nonzero vector of GF(2)^4 is isotropic for an
    // alternating form, and each 1-space has a single nonzero vector
    assert_eq!(ps.num_points(), 15);
    assert_eq!(ps.rank(), 2);
}

#[test]
fn oplus62_has_thirtyfive_points_rank_three() {
    let ps = oplus(6, 2);
    // oracle: exhaustive singular-vector count (see form tests) is 35
    assert_eq!(ps.num_points(), 35);
    assert_eq!(ps.rank(), 3);
}

#[test]
fn sp42_line_count_against_brute_force() {
    let ps = sp(4, 2);
    let lines = ps.enumerate_singular(1).unwrap();
    assert_eq!(lines.len(), 15);
    // oracle: enumerate all 2-dimensional subspaces of GF(2)^4 by spanning
    // point pairs, keep the totally isotropic ones
    let form = ps.form().unwrap();
    let mut all = BTreeSet::new();
    for (i, a) in ps.points().iter().enumerate() {
        for b in ps.points().iter().skip(i + 1) {
            let s = a.span(b).unwrap();
            if s.vdim() == 2 && form.is_totally_singular(&s) {
                all.insert(s);
            }
        }
    }
    assert_eq!(all.len(), 15);
    assert_eq!(lines.as_slice(), &all.into_iter().collect::<Vec<_>>()[..]);
}

#[test]
fn sp62_singular_counts_against_brute_force() {
    let ps = sp(6, 2);
    assert_eq!(ps.num_points(), 63);
    assert_eq!(ps.rank(), 3);
    let lines = ps.enumerate_singular(1).unwrap();
    let planes = ps.enumerate_singular(2).unwrap();
    assert_eq!(lines.len(), 315);
    assert_eq!(planes.len(), 135);
    // oracle for lines: brute force over point pairs
    let form = ps.form().unwrap();
    let mut brute_lines = BTreeSet::new();
    for (i, a) in ps.points().iter().enumerate() {
        for b in ps.points().iter().skip(i + 1) {
            let s = a.span(b).unwrap();
            if form.is_totally_singular(&s) {
                brute_lines.insert(s);
            }
        }
    }
    assert_eq!(brute_lines.len(), 315);
    // oracle for planes: extend each brute-forced line by every point
    let mut brute_planes = BTreeSet::new();
    for l in &brute_lines {
        for p in ps.points() {
            if l.contains(p).unwrap() {
                continue;
            }
            let s = l.span(p).unwrap();
            if s.vdim() == 3 && form.is_totally_singular(&s) {
                brute_planes.insert(s);
            }
        }
    }
    assert_eq!(brute_planes.len(), 135);
    assert_eq!(planes.as_slice(), &brute_planes.into_iter().collect::<Vec<_>>()[..]);
}

#[test]
fn maximal_counts_match_product_formulas() {
    // |G_{n-1}| for Sp(2n,2) is prod_{i=1..n} (2^i + 1)
    assert_eq!(sp(4, 2).enumerate_singular(1).unwrap().len(), 3 * 5);
    assert_eq!(sp(6, 2).enumerate_singular(2).unwrap().len(), 3 * 5 * 9);
    // |G_{n-1}| for O+(2n,2) is prod_{i=0..n-1} (2^i + 1)
    assert_eq!(oplus(6, 2).enumerate_singular(2).unwrap().len(), 2 * 3 * 5);
    assert_eq!(oplus(4, 2).enumerate_singular(1).unwrap().len(), 2 * 3);
}

#[test]
fn thin_counts() {
    let ps = PolarSpace::thin(4).unwrap();
    // C(8,2) - 4 pairs
    assert_eq!(ps.enumerate_singular(1).unwrap().len(), 24);
    assert_eq!(ps.enumerate_singular(3).unwrap().len(), 16);
    let n5 = PolarSpace::thin(5).unwrap();
    assert_eq!(n5.enumerate_singular(2).unwrap().len(), 80); // 2^3 C(5,3)
}

#[test]
fn rank_and_type_examples() {
    let (n, t, c) = sp(6, 2).rank_and_type().unwrap();
    assert_eq!((n, t, c), (3, PolarType::C, 3));
    let (n, t, c) = oplus(6, 2).rank_and_type().unwrap();
    assert_eq!((n, t, c), (3, PolarType::D, 2));
    let (n, t, _) = PolarSpace::thin(4).unwrap().rank_and_type().unwrap();
    assert_eq!((n, t), (4, PolarType::D));
    let (n, t, c) = sp(4, 2).rank_and_type().unwrap();
    assert_eq!((n, t, c), (2, PolarType::C, 3));
}

#[test]
fn odd_characteristic_geometries_build() {
    let ps = sp(4, 3);
    assert_eq!(ps.num_points(), 40);
    assert_eq!(ps.rank(), 2);
    let (_, t, c) = ps.rank_and_type().unwrap();
    assert_eq!((t, c), (PolarType::C, 4));

    // grid GQ(3,1): plus-type on GF(3)^4
    let grid = oplus(4, 3);
    assert_eq!(grid.num_points(), 16);
    let (_, t, c) = grid.rank_and_type().unwrap();
    assert_eq!((t, c), (PolarType::D, 2));
}

#[test]
fn hermitian_gq_builds() {
    let ps = PolarSpace::from_descriptor(&GeometryDescriptor::parse("u:4:4").unwrap()).unwrap();
    // H(3,4): 45 points, generalized quadrangle of order (4,2)
    assert_eq!(ps.num_points(), 45);
    assert_eq!(ps.rank(), 2);
    let (_, t, c) = ps.rank_and_type().unwrap();
    assert_eq!((t, c), (PolarType::C, 3));
}

#[test]
fn minus_type_gq_builds() {
    let ps = PolarSpace::from_descriptor(&GeometryDescriptor::parse("o-:6:2").unwrap()).unwrap();
    // Q-(5,2): 27 points, GQ(2,4)
    assert_eq!(ps.num_points(), 27);
    assert_eq!(ps.rank(), 2);
    let (_, _, c) = ps.rank_and_type().unwrap();
    assert_eq!(c, 5);
}

#[test]
fn rank_too_small_is_rejected() {
    // O-(4,2) has Witt index 1
    let err = PolarSpace::from_descriptor(&GeometryDescriptor::parse("o-:4:2").unwrap());
    assert!(matches!(err, Err(Error::RankTooSmall(1))));
    assert!(matches!(PolarSpace::thin(1), Err(Error::RankTooSmall(1))));
}

#[test]
fn residue_of_empty_is_identity() {
    let ps = sp(4, 2);
    let res = PolarSpace::residue(&ps, &ps.empty()).unwrap();
    assert!(Arc::ptr_eq(&ps, &res));
}

#[test]
fn residue_of_sp62_at_point_is_a_gq_with_sp42_parameters() {
    let ps = sp(6, 2);
    let p = ps.point(0).clone();
    let res = PolarSpace::residue(&ps, &p).unwrap();
    assert_eq!(res.rank(), 2);
    assert_eq!(res.num_points(), 15);
    // every residue point lies on 3 residue lines, as in Sp(4,2)
    let lines = res.enumerate_singular(1).unwrap();
    assert_eq!(lines.len(), 15);
    for i in 0..res.num_points() as PointId {
        let through = lines
            .iter()
            .filter(|l| l.contains(res.point(i)).unwrap())
            .count();
        assert_eq!(through, 3);
    }
    // degree sequence matches the Sp(4,2) collinearity graph
    let sp42 = sp(4, 2);
    let degree = |g: &PolarSpace, i: PointId| {
        (0..g.num_points() as PointId)
            .filter(|&j| j != i && g.collinear(i, j))
            .count()
    };
    for i in 0..15 {
        assert_eq!(degree(&res, i), 6);
        assert_eq!(degree(&sp42, i), 6);
    }
}

#[test]
fn residue_of_thin_at_point_is_thin_of_smaller_rank() {
    let ps = PolarSpace::thin(4).unwrap();
    let p = ps.point(0).clone(); // {+1}
    let res = PolarSpace::residue(&ps, &p).unwrap();
    assert_eq!(res.rank(), 3);
    assert_eq!(res.num_points(), 6);
    assert!(res.is_thin());
    // each residue point is {+1, s} for s not ±1
    for q in res.points() {
        assert!(q.symbols().contains(&1));
    }
}

#[test]
fn iterated_residue_agrees_with_direct_residue() {
    let ps = sp(6, 2);
    let planes = ps.enumerate_singular(2).unwrap();
    let t = planes[0].clone();
    let lines_in_t = ps.singular_within(&t, 1).unwrap();
    let s = ps
        .point_support(&lines_in_t[0])
        .first()
        .map(|&p| ps.point(p).clone())
        .unwrap();
    let l = lines_in_t[0].clone();
    // residue at point s, then at the line l (a point of the first residue)
    let r1 = PolarSpace::residue(&ps, &s).unwrap();
    let r2 = PolarSpace::residue(&r1, &l).unwrap();
    let direct = PolarSpace::residue(&ps, &l).unwrap();
    assert_eq!(r2.points(), direct.points());
    for i in 0..r2.num_points() as PointId {
        for j in 0..r2.num_points() as PointId {
            if i != j {
                assert_eq!(r2.collinear(i, j), direct.collinear(i, j));
            }
        }
    }
}

#[test]
fn halfspin_examples() {
    let (plus, minus) = oplus(6, 2).halfspin_partition().unwrap();
    assert_eq!((plus.len(), minus.len()), (15, 15));

    let thin = PolarSpace::thin(4).unwrap();
    let (p, m) = thin.halfspin_partition().unwrap();
    assert_eq!((p.len(), m.len()), (8, 8));
    // classes match the parity of the number of negative symbols
    let maxes = thin.enumerate_singular(3).unwrap();
    let neg_parity = |s: &Subspace| s.symbols().iter().filter(|&&x| x < 0).count() % 2;
    let p0 = neg_parity(&maxes[p[0] as usize]);
    assert!(p.iter().all(|&i| neg_parity(&maxes[i as usize]) == p0));
    assert!(m.iter().all(|&i| neg_parity(&maxes[i as usize]) != p0));

    assert!(matches!(
        sp(6, 2).halfspin_partition(),
        Err(Error::TypeCInput)
    ));
}

#[test]
fn axiom_report_for_valid_geometries() {
    let r = sp(4, 2).verify_axioms().unwrap();
    assert_eq!(r.p1, Verdict::Pass);
    assert_eq!(r.p2, Verdict::Pass);
    assert_eq!(r.p3, Verdict::Pass);
    let r = PolarSpace::thin(3).unwrap().verify_axioms().unwrap();
    assert_eq!(r.p1, Verdict::ThinTwoPointLines);
    assert_eq!(r.p2, Verdict::Pass);
    assert_eq!(r.p3, Verdict::Pass);
}

#[test]
fn degenerate_form_fails_p2_with_witness() {
    // Alternating Gram with a radical: one hyperbolic block padded by zeros.
    let mut g = Mat::zeros(6, 6);
    for b in 0..2 {
        g.set(2 * b, 2 * b + 1, 1);
        g.set(2 * b + 1, 2 * b, 1);
    }
    let form = FormSpec::new_unchecked(FormKind::Alternating, 2, 6, g).unwrap();
    let ps = PolarSpace::classical_unchecked(form, None).unwrap();
    let report = ps.verify_axioms().unwrap();
    // the radical point is collinear to everything
    assert!(matches!(report.p2, Verdict::Fail(_)));
}

#[test]
fn frame_property_consequence_on_maximal_subspaces() {
    // For p not in a maximal M, the points of M collinear to p form an
    // (n-2)-dimensional singular subspace.
    for ps in [sp(6, 2), oplus(6, 2)] {
        let n = ps.rank() as i64;
        let maxes = ps.enumerate_singular(ps.rank() - 1).unwrap();
        for m in maxes.iter().take(10) {
            for p in 0..ps.num_points() as PointId {
                if m.contains(ps.point(p)).unwrap() {
                    continue;
                }
                let seen: Vec<&Subspace> = ps
                    .point_support(m)
                    .into_iter()
                    .filter(|&q| ps.collinear(p, q))
                    .map(|q| ps.point(q))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .collect();
                let span = ps.span_many(&seen).unwrap();
                assert_eq!(ps.local_pdim(&span), n - 2);
                assert!(ps.is_singular(&span));
            }
        }
    }
}

#[test]
fn point_order_is_canonical() {
    let ps = PolarSpace::thin(3).unwrap();
    let syms: Vec<i16> = ps.points().iter().map(|p| p.symbols()[0]).collect();
    assert_eq!(syms, vec![1, -1, 2, -2, 3, -3]);

    let cps = sp(4, 2);
    let mut sorted = cps.points().to_vec();
    sorted.sort();
    assert_eq!(cps.points(), &sorted[..]);
}

#[test]
fn enumerate_singular_rejects_out_of_range() {
    let ps = sp(4, 2);
    assert!(matches!(
        ps.enumerate_singular(2),
        Err(Error::DimOutOfRange { k: 2, max: 1 })
    ));
}

#[test]
fn all_vectors_oracle_for_perp_collinearity() {
    // collinear_all against direct form evaluation over every vector
    let ps = sp(4, 2);
    let form = ps.form().unwrap();
    let lines = ps.enumerate_singular(1).unwrap();
    for l in lines.iter() {
        for p in 0..ps.num_points() as PointId {
            let v = ps.point(p).basis_rows()[0].to_vec();
            let direct = all_vectors(2, 4)
                .filter(|w| w.iter().any(|&x| x != 0) && l.contains_vector(w).unwrap())
                .all(|w| form.eval_b(&v, &w) == 0);
            assert_eq!(ps.collinear_all(p, l), direct);
        }
    }
}
