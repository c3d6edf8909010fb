// Scratch probe: which small integer parameter triples give the polynomial
// Hilbert sequence through degree 4.

use ncgram::ncalgebra::sklyanin_int;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    let mut bad = 0;
    for trial in 0..40 {
        let mut pick = || loop {
            let v: i64 = rng.random_range(-6..=6);
            if v != 0 {
                return v;
            }
        };
        let (a, b, c) = (pick(), pick(), pick());
        let dims = sklyanin_int(a, b, c).unwrap().graded_dims(4).unwrap();
        let ok = dims == vec![1, 3, 6, 10, 15];
        if !ok {
            bad += 1;
            println!("trial {trial}: ({a},{b},{c}) -> {dims:?}");
        }
    }
    println!("{bad} deviations out of 40");
}
