use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbt_core::analysis::alternate::alternate_choi;
use pbt_core::linalg::{self, ComplexMatrix};
use pbt_core::oracle::{build_povm, dense_rho, oracle_choi_general, oracle_choi_with};
use pbt_core::pbt_choi::pbt_choi;
use pbt_core::resource::{make_family, random_symmetric_resource, reduce, symmetrize, FullResource, ResourceFamily};
use pbt_core::spin_basis::build_rho_eigenvectors;

#[test]
fn pipeline_matches_dense_oracle_on_families() {
    for n in 2..=5 {
        let povm = build_povm(n).unwrap();
        let families = [
            ResourceFamily::Bell,
            ResourceFamily::AdChoi(0.0),
            ResourceFamily::AdChoi(0.3),
            ResourceFamily::AdChoi(0.7),
            ResourceFamily::AdChoi(1.0),
            ResourceFamily::Alternate(0.1),
            ResourceFamily::Alternate(0.5),
            ResourceFamily::Alternate(0.9),
        ];
        for f in &families {
            let res = make_family(f, n).unwrap();
            let d = pbt_choi(&res).unwrap().max_abs_diff(&oracle_choi_with(&povm, &res).unwrap());
            assert!(d <= 1e-10, "n={n} {f:?}: {d:e}");
        }
    }
}

#[test]
fn pipeline_matches_dense_oracle_on_random_symmetric_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in 2..=4 {
        let povm = build_povm(n).unwrap();
        for _ in 0..5 {
            let res = random_symmetric_resource(n, &mut rng).unwrap();
            let d = pbt_choi(&res).unwrap().max_abs_diff(&oracle_choi_with(&povm, &res).unwrap());
            assert!(d <= 1e-10);
        }
    }
}

#[test]
fn non_symmetric_resource_acts_through_its_symmetrisation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=3 {
        let full = FullResource::new(n, linalg::random_density_matrix(1 << (2 * n), &mut rng)).unwrap();
        let general = oracle_choi_general(&full).unwrap();
        let sym = pbt_choi(&reduce(&symmetrize(&full).unwrap()).unwrap()).unwrap();
        assert!(general.max_abs_diff(&sym) <= 1e-10);
    }
}

#[test]
fn rho_eigenvectors_diagonalise_the_dense_rho() {
    for n in 2..=5 {
        let rho = dense_rho(n).unwrap();
        let vecs = build_rho_eigenvectors(n).unwrap();
        assert_eq!(vecs.len(), 1 << (n + 1));
        for e in &vecs {
            let v =
                linalg::real_to_complex(&nalgebra::DMatrix::from_column_slice(e.vector.len(), 1, e.vector.as_slice()));
            let resid: ComplexMatrix = &rho * &v - v.scale(e.eigenvalue);
            assert!(resid.iter().all(|z| z.norm() < 1e-12), "n={n} λ={}", e.eigenvalue);
        }
    }
}

#[test]
fn alternate_sums_describe_the_reflected_port_state() {
    for n in 2..=7 {
        for a in [0.0, 0.1, 0.37, 0.5, 0.9, 1.0] {
            let pipeline = pbt_choi(&make_family(&ResourceFamily::Alternate(a), n).unwrap()).unwrap();
            let d = pipeline.max_abs_diff(&alternate_choi(n, 1.0 - a).unwrap());
            assert!(d <= 1e-10, "n={n} a={a}: {d:e}");
        }
    }
}
