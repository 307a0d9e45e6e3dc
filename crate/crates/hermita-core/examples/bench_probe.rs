use std::time::Instant;
use hermita_core::*;
use hermita_core::matrix::random_matrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let h = AlgebraDescriptor::quaternion_i64(-1, -1).unwrap();
    let spec = Involution::standard(&h, 3);

    let t0 = Instant::now();
    let mut forms = Vec::new();
    for seed in 0..50u64 {
        forms.push(Form::random_star(&spec, 3, Some(Sign::Plus), seed).unwrap());
    }
    println!("50 random_star constructions (k=n=3): {:?}", t0.elapsed());

    let t0 = Instant::now();
    for f in &forms { let _ = f.check_symmetry(); }
    println!("50 check_symmetry: {:?}", t0.elapsed());

    let t0 = Instant::now();
    for f in &forms { let _ = morita_reduce(f, false).unwrap(); }
    println!("50 morita_reduce: {:?}", t0.elapsed());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_matrix(&h, 3, 3, &mut rng);
    let b = random_matrix(&h, 3, 3, &mut rng);
    let t0 = Instant::now();
    for _ in 0..1000 { let _ = a.mul(&b).unwrap(); }
    println!("1000 dense 3x3 quaternion matmuls: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let x = h.element_i64(&[1,2,3,4]).unwrap();
    let y = h.element_i64(&[5,6,7,8]).unwrap();
    let mut acc = h.zero();
    for _ in 0..100000 { acc = x.mul(&y).unwrap(); }
    println!("100000 quaternion elem muls: {:?} ({:?})", t0.elapsed(), acc.coords()[0]);
}
