use mirabolic::scalar::Scalar;
use mirabolic::whittaker::{symbolic_u, verify_projector_identity, ProjectorIdentity};

fn check(id: ProjectorIdentity, n: u8, u: &[Scalar], degree: usize) {
    for vector in [false, true] {
        let r = verify_projector_identity(id, n, u, degree, vector).unwrap();
        assert!(r.holds, "{}: {:?}", r.name, r.residual);
    }
}

#[test]
fn projector_identities_rank_two() {
    for id in ProjectorIdentity::all() {
        check(id, 2, &symbolic_u(2), 2);
    }
}

#[test]
fn projector_identities_rank_three() {
    for id in ProjectorIdentity::all() {
        check(id, 3, &symbolic_u(3), 2);
    }
}

#[cfg(feature = "slow")]
#[test]
fn projector_identities_rank_four_numeric() {
    let u: Vec<Scalar> = [5, 7, 11].into_iter().map(Scalar::from_int).collect();
    for id in ProjectorIdentity::all() {
        check(id, 4, &u, 2);
    }
}
