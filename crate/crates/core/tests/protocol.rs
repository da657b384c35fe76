use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbt_core::kraus::{protocol_kraus, real_trace};
use pbt_core::linalg;
use pbt_core::pbt_choi::pbt_choi;
use pbt_core::resource::{make_family, random_symmetric_resource, ResourceFamily};

#[test]
fn protocol_operators_reproduce_the_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=5 {
        let pk = protocol_kraus(n).unwrap();
        let mut resources: Vec<_> =
            [ResourceFamily::Bell, ResourceFamily::AdChoi(0.45), ResourceFamily::Alternate(0.8)]
                .iter()
                .map(|f| make_family(f, n).unwrap())
                .collect();
        if n <= 4 {
            resources.push(random_symmetric_resource(n, &mut rng).unwrap());
        }
        for res in &resources {
            let via = pk.apply(res).unwrap();
            assert!(via.max_abs_diff(&pbt_choi(res).unwrap()) <= 1e-10);
            assert!((real_trace(via.matrix()) - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn reconstructed_port_element_is_one_nth_of_the_identity_in_trace() {
    for n in 2..=6 {
        let pk = protocol_kraus(n).unwrap();
        let pi = pk.pi_1_reconstruction();
        let dim = 1usize << (n + 1);
        assert!((real_trace(&pi) - dim as f64 / n as f64).abs() < 1e-10, "n={n}");
        let ev = linalg::hermitian_eigenvalues(&pi);
        assert!(ev[0] > -1e-10 && *ev.last().unwrap() < 1.0 + 1e-10);
        assert_eq!(pk.kernel_count() + pk.bulk_count(), pk.labels().len());
    }
}
