use liewedge_core::catalog;
use liewedge_core::linalg::{self, psd_status, rat, Mat, PsdStatus, Rat};
use liewedge_core::spindler::{sharp, standard_omega};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(small_rat(), rows * cols).prop_map(move |v| Mat::from_flat(rows, cols, v))
}

fn square(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max).prop_flat_map(|n| mat(n, n))
}

fn nonzero_vec(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(small_rat(), n).prop_filter("nonzero", |v| !linalg::is_zero_vec(v))
}

proptest! {
    #[test]
    fn gram_matrices_are_psd((a, _) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (mat(r, c), Just(c)))) {
        let gram = &a.transpose() * &a;
        let status = psd_status(&gram).unwrap();
        prop_assert!(status.is_psd());
        let full_rank = linalg::rank(&a) == a.cols();
        prop_assert_eq!(status == PsdStatus::PositiveDefinite, full_rank);
    }

    #[test]
    fn positive_definite_means_positive_values(
        (m, vs) in (1usize..=4).prop_flat_map(|n| (mat(n, n), prop::collection::vec(nonzero_vec(n), 100)))
    ) {
        // A^T A + I is positive definite.
        let pd = &(&m.transpose() * &m) + &Mat::identity(m.rows());
        prop_assert_eq!(psd_status(&pd).unwrap(), PsdStatus::PositiveDefinite);
        for v in &vs {
            prop_assert!(linalg::dot(v, &pd.mul_vec(v)) > Rat::from_integer(0.into()));
        }
    }

    #[test]
    fn kernel_rank_nullity((m, _) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (mat(r, c), Just(c)))) {
        let k = linalg::kernel(&m);
        for v in &k {
            prop_assert!(linalg::is_zero_vec(&m.mul_vec(v)));
        }
        prop_assert_eq!(linalg::rank(&m) + k.len(), m.cols());
    }

    #[test]
    fn eigenvectors_are_exact(m in square(4), lambda in small_rat()) {
        for v in linalg::eigenspace(&m, &lambda) {
            prop_assert_eq!(m.mul_vec(&v), linalg::scale_vec(&lambda, &v));
        }
    }

    #[test]
    fn sharp_is_an_involutive_antiautomorphism(x in mat(4, 4), y in mat(4, 4)) {
        let omega = standard_omega(2);
        let sx = sharp(&x, &omega).unwrap();
        prop_assert_eq!(sharp(&sx, &omega).unwrap(), x.clone());
        let sy = sharp(&y, &omega).unwrap();
        prop_assert_eq!(sharp(&(&x * &y), &omega).unwrap(), &sy * &sx);
    }
}

fn entry_and_dim(name: &str) -> (catalog::CatalogEntry, usize) {
    let e = catalog::get(name).unwrap();
    let n = e.algebra.g.dim();
    (e, n)
}

/// Cone samples `t * y + s * witness` built from catalog witnesses.
fn cone_samples(name: &str) -> Vec<Vec<Rat>> {
    let (e, n) = entry_and_dim(name);
    let cb = e.algebra.basis;
    let mut out = Vec::new();
    if let Some(x) = &e.convex_x {
        out.push(cb.join(&linalg::zero_vec(cb.dim_v), &linalg::zero_vec(cb.dim_z), x));
    }
    if let Some(gd) = &e.grading {
        for w in [&gd.plus, &gd.minus] {
            for u in &w.jordan_units {
                out.push(cb.join(&linalg::zero_vec(cb.dim_v), &linalg::zero_vec(cb.dim_z), u));
            }
        }
    }
    if let Some(f) = &e.functional {
        if let Some(i) = f.iter().position(|c| *c != Rat::from_integer(0.into())) {
            let mut z = linalg::zero_vec(cb.dim_z);
            z[i] = if f[i] > Rat::from_integer(0.into()) { rat(1, 1) } else { rat(-1, 1) };
            out.push(cb.join(&linalg::zero_vec(cb.dim_v), &z, &linalg::zero_vec(cb.dim_l)));
        }
    }
    assert!(out.iter().all(|y| y.len() == n));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_is_a_convex_cone(
        name in prop::sample::select(vec!["jacobi(1)", "jacobi(2)", "ex318", "ex319(2)"]),
        weights in prop::collection::vec((0i64..=4, 1i64..=3), 6),
        t in (1i64..=7, 1i64..=5),
    ) {
        let q = catalog::get(name).unwrap().query().unwrap().unwrap();
        let samples = cone_samples(name);
        let n = q.algebra().g.dim();
        let mut sum = linalg::zero_vec(n);
        for (y, (a, b)) in samples.iter().zip(&weights) {
            prop_assert!(q.in_cone(y));
            sum = linalg::add_vec(&sum, &linalg::scale_vec(&rat(*a, *b), y));
        }
        prop_assert!(q.in_cone(&sum));
        prop_assert!(q.in_cone(&linalg::scale_vec(&rat(t.0, t.1), &sum)));
    }

    #[test]
    fn nilpotent_flows_preserve_the_cone(
        name in prop::sample::select(vec!["jacobi(1)", "ex318", "oscillator"]),
        weights in prop::collection::vec((0i64..=3, 1i64..=2), 6),
        i in 0usize..16,
        j in 0usize..16,
        scale in (-3i64..=3, 1i64..=2),
    ) {
        let q = catalog::get(name).unwrap().query().unwrap().unwrap();
        let g = &q.algebra().g;
        let n = g.dim();
        let bracket = g.bracket_vec(&linalg::unit_vec(n, i % n), &linalg::unit_vec(n, j % n));
        let generator = linalg::scale_vec(&rat(scale.0, scale.1), &bracket);
        let Some(flow) = g.exp_ad(&generator) else {
            return Ok(());
        };
        let mut x = linalg::zero_vec(n);
        for (y, (a, b)) in cone_samples(name).iter().zip(&weights) {
            x = linalg::add_vec(&x, &linalg::scale_vec(&rat(*a, *b), y));
        }
        prop_assert!(q.in_cone(&x));
        prop_assert!(q.in_cone(&flow.mul_vec(&x)));
    }

    #[test]
    fn ad_is_a_homomorphism(
        name in prop::sample::select(vec!["jacobi(1)", "ex318", "ex319(2)", "oscillator"]),
        i in 0usize..16,
        j in 0usize..16,
    ) {
        let g = catalog::get(name).unwrap().algebra.g;
        let n = g.dim();
        let (x, y) = (linalg::unit_vec(n, i % n), linalg::unit_vec(n, j % n));
        let lhs = g.ad_vec(&g.bracket_vec(&x, &y));
        prop_assert_eq!(lhs, g.ad_vec(&x).commutator(&g.ad_vec(&y)));
    }
}

#[test]
fn ad_is_a_homomorphism_on_all_pairs() {
    for name in ["jacobi(2)", "ex319(3)"] {
        let g = catalog::get(name).unwrap().algebra.g;
        let n = g.dim();
        let ads: Vec<Mat> = (0..n).map(|i| g.ad_vec(&linalg::unit_vec(n, i))).collect();
        for i in 0..n {
            for j in i + 1..n {
                let b = g.bracket_vec(&linalg::unit_vec(n, i), &linalg::unit_vec(n, j));
                assert_eq!(g.ad_vec(&b), ads[i].commutator(&ads[j]), "{name}: ({i}, {j})");
            }
        }
    }
}
