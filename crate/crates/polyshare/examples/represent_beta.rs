//! Vector-space representations: per-block bases, the extension-vector
//! search, port verification, and the translated construction for targets
//! the band-diagonal layout cannot separate.
//!
//! Run with: cargo run --example represent_beta

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polyshare::error::Error;
use polyshare::{
    build_representation, default_prime, find_beta, realize_delta, verify_port, DeltaFamily,
    UniformPolymatroid, DEFAULT_BETA_TRIES,
};

fn main() {
    let p = default_prime(4);
    println!("field modulus for 4 blocks: {p}");

    let z = UniformPolymatroid::from_increments(vec![2, 1, 0, 0]).unwrap();
    let rep = build_representation(&z, p).unwrap();
    println!(
        "g = {:?}: ambient dimension {} = sum of band sizes, multiplicities {:?}",
        z.increments(),
        rep.ambient_dim(),
        rep.multiplicities()
    );
    for x in 0..z.m() {
        let cols: Vec<String> = rep
            .block_basis(x)
            .columns()
            .iter()
            .map(|c| format!("{c:?}"))
            .collect();
        println!("  V_{} = span {}", x + 1, cols.join(", "));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // a target that works directly on the band-diagonal representation
    let d = DeltaFamily::parse("{1};{2,3};{2,4};{3,4}", 4).unwrap();
    let ext = find_beta(&rep, &d, DEFAULT_BETA_TRIES, &mut rng).unwrap();
    verify_port(&ext, &d).unwrap();
    println!("\ntarget {d}: beta = {:?}, port verified over all 16 subsets", ext.beta);

    // two singleton minimal sets: every band-diagonal block shares the
    // rank-one band, so the direct search must fail...
    let d2 = DeltaFamily::parse("{1};{2};{3,4}", 4).unwrap();
    match find_beta(&rep, &d2, DEFAULT_BETA_TRIES, &mut rng) {
        Err(Error::BetaNotFound(failure)) => {
            println!("\ntarget {d2} on the band-diagonal representation: {failure}")
        }
        other => println!("unexpected: {other:?}"),
    }

    // ...and the combined search switches to the translated representation
    let (ext2, path) = realize_delta(&z, &d2, p, DEFAULT_BETA_TRIES, &mut rng).unwrap();
    verify_port(&ext2, &d2).unwrap();
    println!(
        "target {d2} via {} representation: beta = {:?}, realized min delta = {}",
        path.label(),
        ext2.beta,
        ext2.realized_delta
    );
}
