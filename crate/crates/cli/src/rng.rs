//! Seeded randomness: every check draws from its own ChaCha8 stream derived
//! from the run seed and the check name, so checks are independent of order.

use pairgeom::exactla::{Field, Matrix, PrimeField, Rationals, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RNG_NAME: &str = "chacha8";

/// 64-bit FNV-1a, a stable string hash for stream derivation.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub fn check_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(name));
    rng
}

/// Draws field elements for random matrices.
pub trait Sampler<F: Field> {
    fn field(&self) -> &F;
    fn elem(&self, rng: &mut ChaCha8Rng) -> F::Elem;

    fn matrix(&self, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<F> {
        let data = (0..rows * cols).map(|_| self.elem(rng)).collect();
        Matrix::from_vec(self.field(), rows, cols, data).expect("shape")
    }

    /// Uniform-ish element of a subspace (random coordinates in its basis).
    fn element_of(&self, rng: &mut ChaCha8Rng, s: &Subspace<F>) -> Vec<F::Elem> {
        let coords: Vec<F::Elem> = (0..s.dim()).map(|_| self.elem(rng)).collect();
        s.combine(&coords)
    }

    fn invertible(&self, rng: &mut ChaCha8Rng, n: usize) -> Matrix<F> {
        loop {
            let m = self.matrix(rng, n, n);
            if m.is_invertible() {
                return m;
            }
        }
    }
}

impl Sampler<PrimeField> for PrimeField {
    fn field(&self) -> &PrimeField {
        self
    }
    fn elem(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.gen_range(0..self.p())
    }
}

impl Sampler<Rationals> for Rationals {
    fn field(&self) -> &Rationals {
        self
    }
    /// Small numerators in `-4..=4` over denominators `1..=3`.
    fn elem(&self, rng: &mut ChaCha8Rng) -> <Rationals as Field>::Elem {
        let n = self.from_i64(rng.gen_range(-4..=4));
        let d = rng.gen_range(1..=3);
        self.mul(&n, &self.inv_integer(d).expect("nonzero"))
    }
}
