//! Seeded generation of test data: symmetric matrices, group elements, planes and lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::subspace::{unit, LinSubspace};
use crate::algebra::symmat::SymMat3;
use crate::scalar::{ratio, Rat};
use crate::sp3::group::Sp3Element;
use crate::sp3::point::Point13;
use crate::sp3::sigma::exp_map;

/// Deterministic generator; every random choice in the crate flows from one of these.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self, lo: i64, hi: i64) -> i64 {
        loop {
            let v = self.int(lo, hi);
            if v != 0 {
                return v;
            }
        }
    }

    pub fn rat(&mut self, lo: i64, hi: i64) -> Rat {
        ratio(self.int(lo, hi), 1)
    }

    /// Small rational `p/q` with `|p| <= 5`, `1 <= q <= 3`, nonzero.
    pub fn small_rat(&mut self) -> Rat {
        ratio(self.nonzero_int(-5, 5), self.int(1, 3))
    }

    pub fn int_vec(&mut self, n: usize, lo: i64, hi: i64) -> Vec<Rat> {
        (0..n).map(|_| self.rat(lo, hi)).collect()
    }

    pub fn nonzero_vec(&mut self, n: usize, lo: i64, hi: i64) -> Vec<Rat> {
        loop {
            let v = self.int_vec(n, lo, hi);
            if v.iter().any(|x| *x != ratio(0, 1)) {
                return v;
            }
        }
    }

    pub fn symmat(&mut self, lo: i64, hi: i64) -> SymMat3<Rat> {
        SymMat3::new(std::array::from_fn(|_| self.rat(lo, hi)))
    }

    pub fn point(&mut self, lo: i64, hi: i64) -> Point13<Rat> {
        loop {
            let p = Point13::new(std::array::from_fn(|_| self.rat(lo, hi)));
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Product of 6 to 12 transvections with small rational parameters.
    pub fn group_element(&mut self) -> Sp3Element<Rat> {
        let n = self.int(6, 12);
        let mut g = Sp3Element::identity();
        for _ in 0..n {
            let v = self.nonzero_vec(6, -2, 2);
            let t = Sp3Element::transvection(&v, &self.small_rat());
            g = g.compose(&t);
        }
        g
    }

    /// A point of the grassmannian in general position: a chart point moved by a random group element.
    pub fn sigma_point(&mut self) -> Point13<Rat> {
        let x = self.symmat(-3, 3);
        let g = self.group_element();
        g.act(&exp_map(&x)).expect("group elements preserve the slice")
    }

    pub fn lagrangian_plane(&mut self) -> LinSubspace<Rat> {
        let g = self.group_element();
        let x = self.symmat(-3, 3);
        let rows: Vec<Vec<Rat>> = (0..3)
            .map(|i| {
                let mut r = unit::<Rat>(6, i);
                for j in 0..3 {
                    r[3 + j] = x.get(i, j);
                }
                g.apply(&r)
            })
            .collect();
        LinSubspace::span(6, &rows).expect("vectors of length 6")
    }

    /// Random isotropic line: two vectors of a random lagrangian plane.
    pub fn isotropic_line(&mut self) -> LinSubspace<Rat> {
        loop {
            let p = self.lagrangian_plane();
            let b = p.basis();
            let mix = |s: &mut Self| -> Vec<Rat> {
                let c: Vec<Rat> = s.int_vec(3, -2, 2);
                (0..6).map(|k| (0..3).fold(ratio(0, 1), |acc, i| acc + c[i].clone() * b[i][k].clone())).collect()
            };
            let l = LinSubspace::span(6, &[mix(self), mix(self)]).expect("length 6");
            if l.dim() == 2 {
                return l;
            }
        }
    }
}
