//! The braiding on the N-dimensional U_q(sl2) module.
//!
//! Basis e_0..e_{N-1} with H e_k = λ(k) e_k, λ(k) = N − 1 − 2k,
//! E e_k = [N−k] e_{k−1}, F e_k = [k+1] e_{k+1}, and
//! R = v^{H⊗H/2} Σ_n v^{n(n−1)/2} (v − v⁻¹)^n / [n]! · E^n ⊗ F^n.
//! Ř = P∘R; q = v².

use rug::{Complex, Float};

/// One nonzero matrix entry: ⟨out_l, out_r| M |in_l, in_r⟩.
#[derive(Clone, Debug)]
pub struct Entry {
    pub in_l: u8,
    pub in_r: u8,
    pub out_l: u8,
    pub out_r: u8,
    pub value: Complex,
}

#[derive(Clone, Debug)]
pub struct Braiding {
    pub n: usize,
    pub entries: Vec<Entry>,
}

pub(crate) fn lambda(n: usize, k: usize) -> i64 {
    n as i64 - 1 - 2 * k as i64
}

/// Complex powers of a unit-modulus base, with a square root for half-integer exponents.
pub(crate) struct Powers {
    root: Complex,
}

impl Powers {
    pub fn new(v: &Complex) -> Powers {
        Powers { root: v.clone().sqrt() }
    }

    /// v^(half / 2)
    pub fn half(&self, half: i64) -> Complex {
        let prec = self.root.prec();
        let base = if half >= 0 { self.root.clone() } else { self.root.clone().recip() };
        pow_u(&base, half.unsigned_abs(), prec)
    }
}

fn pow_u(base: &Complex, mut e: u64, prec: (u32, u32)) -> Complex {
    let mut acc = Complex::with_val(prec, 1);
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b.square_mut();
        e >>= 1;
    }
    acc
}

/// [k] = (v^k − v^−k)/(v − v⁻¹) and the factorials [k]! for k < n.
fn q_factorials(v: &Complex, n: usize) -> Vec<Complex> {
    let prec = v.prec();
    let vinv = v.clone().recip();
    let denom = Complex::with_val(prec, v - &vinv);
    let mut fact = vec![Complex::with_val(prec, 1)];
    let mut vk = Complex::with_val(prec, 1);
    let mut vmk = Complex::with_val(prec, 1);
    for k in 1..n.max(1) {
        vk *= v;
        vmk *= &vinv;
        let qk = Complex::with_val(prec, &vk - &vmk) / &denom;
        let next = Complex::with_val(prec, &fact[k - 1] * &qk);
        fact.push(next);
    }
    fact
}

impl Braiding {
    /// Ř for `inverse = false`, Ř⁻¹ otherwise.
    pub fn new(n: usize, v: &Complex, inverse: bool) -> Braiding {
        let prec = v.prec();
        let fact = q_factorials(v, n);
        let pw = Powers::new(v);
        let vinv = v.clone().recip();
        let diff = Complex::with_val(prec, v - &vinv);
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let max_n = if inverse { j.min(n - 1 - i) } else { i.min(n - 1 - j) };
                for m in 0..=max_n {
                    let mi = m as i64;
                    let mut c = pow_u(&diff, m as u64, prec) / &fact[m];
                    let tri = mi * (mi - 1);
                    if !inverse {
                        c *= pw.half(tri);
                        c *= Complex::with_val(prec, &fact[n - 1 - i + m] / &fact[n - 1 - i]);
                        c *= Complex::with_val(prec, &fact[j + m] / &fact[j]);
                        c *= pw.half(lambda(n, i - m) * lambda(n, j + m));
                        entries.push(Entry {
                            in_l: i as u8,
                            in_r: j as u8,
                            out_l: (j + m) as u8,
                            out_r: (i - m) as u8,
                            value: c,
                        });
                    } else {
                        if m % 2 == 1 {
                            c = -c;
                        }
                        c *= pw.half(-tri);
                        c *= pw.half(-lambda(n, i) * lambda(n, j));
                        c *= Complex::with_val(prec, &fact[n - 1 - j + m] / &fact[n - 1 - j]);
                        c *= Complex::with_val(prec, &fact[i + m] / &fact[i]);
                        entries.push(Entry {
                            in_l: i as u8,
                            in_r: j as u8,
                            out_l: (j - m) as u8,
                            out_r: (i + m) as u8,
                            value: c,
                        });
                    }
                }
            }
        }
        Braiding { n, entries }
    }

    /// Dense N²×N² matrix, row = out_l·N + out_r, column = in_l·N + in_r.
    pub fn dense(&self) -> Vec<Vec<Complex>> {
        let n2 = self.n * self.n;
        let prec = self.entries[0].value.prec();
        let mut m = vec![vec![Complex::with_val(prec, 0); n2]; n2];
        for e in &self.entries {
            m[e.out_l as usize * self.n + e.out_r as usize][e.in_l as usize * self.n + e.in_r as usize] += &e.value;
        }
        m
    }
}

/// e^{iπ/N} at `prec` bits.
pub fn root_of_unity(n: usize, prec: u32) -> Complex {
    let angle = Float::with_val(prec, rug::float::Constant::Pi) / n as u64;
    unit(&angle)
}

/// e^{iθ}.
pub fn unit(theta: &Float) -> Complex {
    let prec = theta.prec();
    let (s, c) = theta.clone().sin_cos(Float::new(prec));
    Complex::with_val(prec, (c, s))
}
