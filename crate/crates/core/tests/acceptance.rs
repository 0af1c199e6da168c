//! Acceptance suite. Each test covers one criterion end to end at its
//! stated tolerance and prints a single pass line; a failed assertion
//! marks the criterion failed.

mod common;

use common::*;
use rand::Rng;
use subspace_angles::canonical::{canonical_bases, dual_permutation, synthesize_pair};
use subspace_angles::eigen::{singular_values, sym_eigen};
use subspace_angles::inertia::{inertia_split, positive_definite_by_split};
use subspace_angles::matrix::{determinant, dot, gram, multiply, multiply_transposed, Matrix};
use subspace_angles::principal::{cluster_values, dual_principal_values, principal_spectrum};
use subspace_angles::subspace::{
    angle_between, cross_gram, gram_determinant, is_subspace_of, project_gram,
};
use subspace_angles::{Error, Subspace};

fn pass(number: usize, name: &str, detail: String) {
    println!("acceptance {number:02} {name}: PASS ({detail})");
}

/// Criterion 1: the four-dimensional golden pair has the single
/// principal value cos^2(phi) with multiplicity 2, and the overall
/// cosine equals cos^2(phi), both within 1e-10.
#[test]
fn criterion_01_golden_example() {
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
    for phi in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        let (s, c) = phi.sin_cos();
        let s1 = Subspace::from_axes(4, 2).unwrap();
        let rows = Matrix::from_rows(&[vec![c, 0.0, s, 0.0], vec![0.0, c, 0.0, s]]).unwrap();
        let s2 = Subspace::new(4, rows).unwrap();

        let spectrum = principal_spectrum(&s1, &s2).unwrap();
        assert_eq!(spectrum.values().len(), 1, "phi={phi}: expected one value");
        assert_eq!(spectrum.multiplicities(), &[2], "phi={phi}");
        assert!(
            (spectrum.values()[0] - c * c).abs() <= 1e-10,
            "phi={phi}: value {} vs {}",
            spectrum.values()[0],
            c * c
        );

        let angle = angle_between(&s1, &s2).unwrap();
        assert!(
            (angle.cos_phi - c * c).abs() <= 1e-10,
            "phi={phi}: cos {} vs {}",
            angle.cos_phi,
            c * c
        );
    }
    pass(
        1,
        "golden example",
        "phi in {pi/6, pi/4, pi/3}, both checks at 1e-10".into(),
    );
}

/// Criterion 2: on 500 random pairs the clustered principal values equal
/// the clustered squared singular values of B1 B2^T within 1e-8.
#[test]
fn criterion_02_svd_oracle_equivalence() {
    let mut rng = rng(201);
    let mut failures = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(1..=n);
        let q = rng.gen_range(1..=n);
        let s1 = random_subspace(&mut rng, n, p);
        let s2 = random_subspace(&mut rng, n, q);
        let spectrum = principal_spectrum(&s1, &s2).unwrap();

        let (small, large) = if p <= q { (&s1, &s2) } else { (&s2, &s1) };
        let w = multiply_transposed(small.ortho_basis(), large.ortho_basis()).unwrap();
        let squares: Vec<f64> = singular_values(&w)
            .unwrap()
            .iter()
            .map(|s| (s * s).clamp(0.0, 1.0))
            .collect();
        let (oracle_vals, oracle_mults) = cluster_values(&squares, 1e-7);

        let ok = spectrum.values().len() == oracle_vals.len()
            && spectrum
                .values()
                .iter()
                .zip(&oracle_vals)
                .all(|(a, b)| (a - b).abs() <= 1e-8)
            && spectrum.multiplicities() == oracle_mults.as_slice();
        if !ok {
            failures += 1;
        }
    }
    assert_eq!(
        failures, 0,
        "{failures} of 500 trials disagreed with the SVD oracle"
    );
    pass(
        2,
        "SVD-oracle equivalence",
        "500 trials, zero failures at 1e-8".into(),
    );
}

/// Criterion 3: the Gram inequality det[MM^T] <= Gamma1 Gamma2 + 1e-9 on
/// 500 random trials; equality within 1e-9 exactly on constructed
/// containment instances and never on non-containment instances whose
/// largest principal value stays at or below 0.99.
#[test]
fn criterion_03_gram_inequality_and_equality_condition() {
    let mut rng = rng(202);

    // the inequality itself, raw independent a-rows, orthonormal b when p < q
    for _ in 0..500 {
        let n = rng.gen_range(2..=8);
        let q = rng.gen_range(1..=n);
        let p = rng.gen_range(1..=q);
        let sa = loop {
            let rows = random_unit_rows(&mut rng, p, n);
            if let Ok(s) = Subspace::new(n, rows) {
                if s.dim() == p {
                    break s;
                }
            }
        };
        let sb = if p < q {
            let s = random_subspace(&mut rng, n, q);
            Subspace::new(n, s.ortho_basis().clone()).unwrap()
        } else {
            loop {
                let rows = random_unit_rows(&mut rng, q, n);
                if let Ok(s) = Subspace::new(n, rows) {
                    if s.dim() == q {
                        break s;
                    }
                }
            }
        };
        let m = cross_gram(&sa, &sb, true).unwrap();
        let det_mmt = determinant(&gram(&m)).unwrap();
        let bound = gram_determinant(&sa, true).unwrap() * gram_determinant(&sb, true).unwrap();
        assert!(
            det_mmt <= bound + 1e-9,
            "inequality violated: {det_mmt} > {bound} + 1e-9 (n={n}, p={p}, q={q})"
        );
    }

    // equality holds on containment instances
    for _ in 0..150 {
        let n = rng.gen_range(2..=8);
        let q = rng.gen_range(1..=n);
        let p = rng.gen_range(1..=q);
        let outer = random_subspace(&mut rng, n, q);
        let outer = Subspace::new(n, outer.ortho_basis().clone()).unwrap();
        let coeffs = well_conditioned_rows(&mut rng, p, q, 1e-3);
        let inner = Subspace::new(n, multiply(&coeffs, outer.raw_basis()).unwrap()).unwrap();

        let m = cross_gram(&inner, &outer, true).unwrap();
        let det_mmt = determinant(&gram(&m)).unwrap();
        let bound =
            gram_determinant(&inner, true).unwrap() * gram_determinant(&outer, true).unwrap();
        assert!(
            (det_mmt - bound).abs() <= 1e-9,
            "containment equality missed: |{det_mmt} - {bound}| > 1e-9"
        );
        assert!(is_subspace_of(&inner, &outer).unwrap());
    }

    // equality never holds when the top principal value is at most 0.99
    let mut checked = 0;
    while checked < 150 {
        let n = rng.gen_range(2..=8);
        let q = rng.gen_range(1..=n);
        let p = rng.gen_range(1..=q);
        let sa = loop {
            let rows = well_conditioned_rows(&mut rng, p, n, 1e-4);
            if let Ok(s) = Subspace::new(n, rows) {
                if s.dim() == p {
                    break s;
                }
            }
        };
        let sb = {
            let s = random_subspace(&mut rng, n, q);
            Subspace::new(n, s.ortho_basis().clone()).unwrap()
        };
        let spectrum = principal_spectrum(&sa, &sb).unwrap();
        if spectrum.values()[0] > 0.99 {
            continue;
        }
        let m = cross_gram(&sa, &sb, true).unwrap();
        let det_mmt = determinant(&gram(&m)).unwrap();
        let bound = gram_determinant(&sa, true).unwrap() * gram_determinant(&sb, true).unwrap();
        assert!(
            (det_mmt - bound).abs() > 1e-9,
            "spurious equality on a non-contained pair (top value {})",
            spectrum.values()[0]
        );
        assert!(!is_subspace_of(&sa, &sb).unwrap());
        checked += 1;
    }
    pass(
        3,
        "Gram inequality + equality condition",
        "500 inequality, 150 containment, 150 separated trials".into(),
    );
}

/// Criterion 4: the angle survives passage to orthogonal complements on
/// 200 random proper pairs within 1e-9.
#[test]
fn criterion_04_complement_duality() {
    let mut rng = rng(203);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(1..n);
        let q = rng.gen_range(1..n);
        let s1 = random_subspace(&mut rng, n, p);
        let s2 = random_subspace(&mut rng, n, q);
        let direct = angle_between(&s1, &s2).unwrap().cos_phi;
        let c1 = s1.orthogonal_complement().unwrap();
        let c2 = s2.orthogonal_complement().unwrap();
        let dual = angle_between(&c1, &c2).unwrap().cos_phi;
        assert!(
            (direct - dual).abs() <= 1e-9,
            "duality gap {} (n={n}, p={p}, q={q})",
            (direct - dual).abs()
        );
    }
    pass(4, "complement duality", "200 trials at 1e-9".into());
}

/// Criterion 5: duality bookkeeping of the spectra, the multiplicity
/// shift of value 1, the n/2 bound on interior values, and the shared
/// direction forced in odd dimensions.
#[test]
fn criterion_05_dual_spectra_bookkeeping() {
    let mut rng = rng(204);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(1..n);
        let q = rng.gen_range(1..n);
        let s1 = random_subspace(&mut rng, n, p);
        let s2 = random_subspace(&mut rng, n, q);
        let spectra = dual_principal_values(&s1, &s2).unwrap();

        let pair_interior = spectra.pair.interior();
        let dual_interior = spectra.dual.interior();
        assert_eq!(pair_interior.len(), dual_interior.len());
        for ((v, m), (w, k)) in pair_interior.iter().zip(&dual_interior) {
            assert!((v - w).abs() <= 1e-8);
            assert_eq!(m, k);
        }

        let shift = n as i64 - p as i64 - q as i64;
        assert_eq!(spectra.unit_mult_shift, shift);
        assert_eq!(
            spectra.dual.multiplicity_of_one() as i64 - spectra.pair.multiplicity_of_one() as i64,
            shift
        );

        // nonzero nonunit values, counted with multiplicity, fill at most n/2
        let interior_count: usize = pair_interior.iter().map(|(_, m)| m).sum();
        assert!(
            interior_count * 2 <= n,
            "{interior_count} interior values in E_{n}"
        );
    }

    // odd ambient dimension with p = q: one side of the duality carries
    // a common direction
    for _ in 0..50 {
        let n = [3usize, 5, 7][rng.gen_range(0..3)];
        let p = rng.gen_range(1..n);
        let s1 = random_subspace(&mut rng, n, p);
        let s2 = random_subspace(&mut rng, n, p);
        let spectra = dual_principal_values(&s1, &s2).unwrap();
        assert!(
            spectra.pair.multiplicity_of_one() >= 1 || spectra.dual.multiplicity_of_one() >= 1,
            "no shared direction on either side (n={n}, p=q={p})"
        );
    }
    pass(
        5,
        "dual spectra bookkeeping",
        "200 shift trials + 50 odd-dimension witnesses".into(),
    );
}

/// Criterion 6: synthesis from prescribed values recovers the requested
/// spectrum, and the pair is unique up to one orthogonal motion.
#[test]
fn criterion_06_synthesis_roundtrip_and_uniqueness() {
    let mut rng = rng(205);
    for _ in 0..100 {
        let (n, p, q, values) = random_admissible_spec(&mut rng);
        let (s1, s2) = synthesize_pair(n, p, q, &values).unwrap();
        assert_eq!((s1.dim(), s2.dim()), (p, q));

        let recovered = principal_spectrum(&s1, &s2).unwrap().expanded();
        let mut requested = values.clone();
        requested.sort_by(|a, b| b.total_cmp(a));
        assert!(
            multisets_match(&recovered, &requested, 1e-8),
            "spectrum {recovered:?} vs requested {requested:?} (n={n}, p={p}, q={q})"
        );

        // uniqueness: a rotated copy is carried back by the frame map
        let rot = random_orthogonal(&mut rng, n);
        let r1 = rotate_subspace(&s1, &rot);
        let r2 = rotate_subspace(&s2, &rot);
        let cf = canonical_bases(&s1, &s2).unwrap();
        let cf_rot = canonical_bases(&r1, &r2).unwrap();
        let map = multiply(&cf_rot.frame().transpose(), &cf.frame()).unwrap();
        let back1 = rotate_subspace(&r1, &map);
        let back2 = rotate_subspace(&r2, &map);
        assert!(
            same_subspace(&back1, &s1, 1e-8),
            "first image off (n={n}, p={p}, q={q})"
        );
        assert!(
            same_subspace(&back2, &s2, 1e-8),
            "second image off (n={n}, p={p}, q={q})"
        );
    }
    pass(
        6,
        "synthesis roundtrip + uniqueness",
        "100 random admissible specs".into(),
    );
}

fn random_admissible_spec(rng: &mut rand_chacha::ChaCha8Rng) -> (usize, usize, usize, Vec<f64>) {
    loop {
        let n = rng.gen_range(2..=8);
        let q = rng.gen_range(1..n); // q < n keeps every complement proper
        let p = rng.gen_range(1..=q);
        if p + q < n {
            continue;
        }
        let forced_ones = p + q - n;
        let mut values = vec![1.0; forced_ones];
        let mut last_interior: Option<f64> = None;
        while values.len() < p {
            match rng.gen_range(0..10) {
                0 => values.push(1.0),
                1 => values.push(0.0),
                // repeat an interior value to exercise multiplicities
                2 if last_interior.is_some() => values.push(last_interior.unwrap()),
                _ => {
                    let v = rng.gen_range(0.05..0.95);
                    last_interior = Some(v);
                    values.push(v);
                }
            }
        }
        return (n, p, q, values);
    }
}

/// Criterion 7: every constructed canonical matrix is orthogonal at
/// 1e-9, matches the inner products of its bases at 1e-8, and the dual
/// permutation complements every interior value at 1e-10.
#[test]
fn criterion_07_canonical_matrix_quality() {
    let mut rng = rng(206);
    let mut forms = 0;
    while forms < 100 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(1..n);
        let q = rng.gen_range(1..n);
        let s1 = random_subspace(&mut rng, n, p);
        let s2 = random_subspace(&mut rng, n, q);
        let cf = canonical_bases(&s1, &s2).unwrap();

        let ppt = multiply(&cf.matrix_p, &cf.matrix_p.transpose()).unwrap();
        assert!(
            ppt.max_diff(&Matrix::identity(n)) <= 1e-9,
            "P not orthogonal (n={n}, p={p}, q={q})"
        );

        // entries are the inner products of the ordered bases
        let frame = cf.frame();
        let columns = cf.column_frame();
        for u in 0..n {
            for v in 0..n {
                let ip = dot(frame.row(u), columns.row(v));
                assert!((cf.matrix_p.get(u, v) - ip).abs() <= 1e-8);
            }
        }

        let dual = dual_permutation(&cf);
        let d_ppt = multiply(&dual.matrix_p, &dual.matrix_p.transpose()).unwrap();
        assert!(d_ppt.max_diff(&Matrix::identity(n)) <= 1e-9);
        let cos_in: Vec<f64> = cf.spec.cosines().to_vec();
        let mut expected: Vec<f64> = cos_in.iter().map(|c| 1.0 - c * c).collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        let got: Vec<f64> = dual.spec.cosines().iter().map(|c| c * c).collect();
        assert_eq!(expected.len(), got.len());
        for (e, g) in expected.iter().zip(&got) {
            assert!((e - g).abs() <= 1e-10, "dual value {g} vs 1-c^2 {e}");
        }
        forms += 1;
    }
    pass(
        7,
        "canonical matrix quality",
        "100 forms: orthogonality 1e-9, entries 1e-8, dual values 1e-10".into(),
    );
}

/// Criterion 8: the bordered-determinant projection agrees with the
/// least-squares projector componentwise at 1e-9 and leaves an
/// orthogonal residual.
#[test]
fn criterion_08_bordered_projection() {
    let mut rng = rng(207);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..n);
        let s = loop {
            let rows = well_conditioned_rows(&mut rng, k, n, 1e-3);
            if let Ok(s) = Subspace::new(n, rows) {
                if s.dim() == k {
                    break s;
                }
            }
        };
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let projected = project_gram(&x, &s).unwrap();

        // least-squares oracle x B^T (B B^T)^{-1} B
        let b = s.raw_basis();
        let xm = Matrix::new(1, n, x.clone()).unwrap();
        let rhs = multiply_transposed(&xm, b).unwrap().transpose();
        let sol = subspace_angles::matrix::solve_spd(&gram(b), &rhs).unwrap();
        let ls = multiply(&sol.transpose(), b).unwrap();
        for j in 0..n {
            assert!(
                (projected[j] - ls.get(0, j)).abs() <= 1e-9,
                "component {j} differs: {} vs {}",
                projected[j],
                ls.get(0, j)
            );
        }
        let residual: Vec<f64> = x.iter().zip(&projected).map(|(a, b)| a - b).collect();
        for i in 0..k {
            assert!(dot(&residual, b.row(i)).abs() <= 1e-9);
        }
    }
    pass(
        8,
        "bordered-determinant projection",
        "200 trials at 1e-9".into(),
    );
}

/// Criterion 9: integer additivity of the restricted indices and
/// soundness of the positive-definiteness split.
#[test]
fn criterion_09_inertia_additivity_and_split() {
    let mut rng = rng(208);
    let mut additive = 0;
    while additive < 200 {
        let n = rng.gen_range(2..=8);
        let a = random_nonsingular_symmetric(&mut rng, n);
        let p = rng.gen_range(1..n);
        let l = random_subspace(&mut rng, n, p);
        match inertia_split(&a, &l) {
            Ok(report) => {
                assert!(
                    report.additivity_holds,
                    "additivity failed: {} != {} + {}",
                    report.ind_full, report.ind_restricted, report.ind_complement
                );
                // soundness of the split criterion on the same instance
                match positive_definite_by_split(&a, &l) {
                    Ok(true) => {
                        let min = sym_eigen(&a.symmetrized())
                            .unwrap()
                            .eigenvalues
                            .last()
                            .copied()
                            .unwrap();
                        assert!(min > 1e-9 * a.max_norm());
                    }
                    Ok(false) => {}
                    Err(e) => panic!("split criterion errored: {e}"),
                }
                additive += 1;
            }
            Err(Error::SingularRestriction { .. }) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        }
    }

    // SPD instances must always pass the split
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let g = random_matrix(&mut rng, n, n);
        let mut a = gram(&g);
        for i in 0..n {
            a.set(i, i, a.get(i, i) + 1.0);
        }
        let p = rng.gen_range(1..n);
        let l = random_subspace(&mut rng, n, p);
        assert!(positive_definite_by_split(&a, &l).unwrap());
    }
    pass(
        9,
        "inertia additivity + split soundness",
        "200 additive trials (exact), 50 SPD trials".into(),
    );
}

fn random_nonsingular_symmetric(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Matrix {
    let q = random_orthogonal(rng, n);
    let mut d = Matrix::zeros(n, n);
    for i in 0..n {
        let magnitude = rng.gen_range(0.2..2.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        d.set(i, i, sign * magnitude);
    }
    multiply(&multiply(&q.transpose(), &d).unwrap(), &q)
        .unwrap()
        .symmetrized()
}

/// Criterion 10: the nonzero spectra of U U^T and U^T U agree within
/// 1e-9 with equal multiplicities on 200 random rectangular matrices.
#[test]
fn criterion_10_shared_nonzero_spectra() {
    let mut rng = rng(209);
    for _ in 0..200 {
        let p = rng.gen_range(1..=6);
        let q = rng.gen_range(1..=6);
        let u = random_matrix(&mut rng, p, q);
        let ut = u.transpose();
        let left = sym_eigen(&gram(&u)).unwrap().eigenvalues;
        let right = sym_eigen(&gram(&ut)).unwrap().eigenvalues;

        let keep = |values: &[f64]| -> Vec<(f64, usize)> {
            let (vals, mults) = cluster_values(values, 1e-7);
            vals.into_iter()
                .zip(mults)
                .filter(|(v, _)| v.abs() > 1e-7)
                .collect()
        };
        let lc = keep(&left);
        let rc = keep(&right);
        assert_eq!(lc.len(), rc.len(), "cluster counts differ (p={p}, q={q})");
        for ((lv, lm), (rv, rm)) in lc.iter().zip(&rc) {
            assert!((lv - rv).abs() <= 1e-9, "{lv} vs {rv}");
            assert_eq!(lm, rm);
        }
    }
    pass(
        10,
        "shared nonzero spectra",
        "200 rectangular matrices at 1e-9".into(),
    );
}
