use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest supported `|K|`.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A finite extension `K = F_{q^m}` of `k = F_q`, `q = p^a`, with Galois group
/// generated by `x ↦ x^q`.
///
/// Elements of `K` are coded by their coordinates in the power basis
/// `1, x, x², …` of a fixed primitive root `x`: the code of `Σ c_i x^i` is
/// `Σ c_i p^i`. In particular `0` and `1` are coded as themselves, and the
/// prime field is `0..p`.
#[derive(Clone, Debug)]
pub struct GaloisFieldTower {
    p: u32,
    base_degree: u32,
    ext_degree: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u32>,
    /// `frob[k][x] = x^(q^k)`.
    frob: Vec<Vec<u32>>,
    base: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl GaloisFieldTower {
    /// `k = F_{p^base_degree}` inside `K = F_{p^(base_degree·ext_degree)}`.
    pub fn new(p: u32, base_degree: u32, ext_degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if base_degree == 0 || ext_degree == 0 {
            return Err(Error::InvalidField("degrees must be positive".into()));
        }
        let dim = base_degree * ext_degree;
        let order = (p as u64).checked_pow(dim).filter(|&o| o <= MAX_FIELD_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("{p}^{dim} exceeds the supported field size {MAX_FIELD_ORDER}"))
        })? as u32;

        let modulus = primitive_modulus(p, dim as usize, order);
        let digits_to_code = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = vec![0u32; dim as usize];
        cur[0] = 1;
        for i in 0..order - 1 {
            let code = digits_to_code(&cur);
            exp.push(code);
            log[code as usize] = i;
            times_x(&mut cur, &modulus, p);
        }

        let digit_op = |a: u32, b: u32, f: &dyn Fn(u32, u32) -> u32| {
            let (mut a, mut b, mut out, mut scale) = (a, b, 0u32, 1u32);
            for _ in 0..dim {
                out += f(a % p, b % p) * scale;
                a /= p;
                b /= p;
                scale *= p;
            }
            out
        };
        let neg: Vec<u32> = (0..order).map(|a| digit_op(a, 0, &|x, _| (p - x) % p)).collect();
        let add = (p != 2 && order <= 1024).then(|| {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = digit_op(a, b, &|x, y| (x + y) % p) as u16;
                }
            }
            t
        });

        let q = (p as u64).pow(base_degree);
        let mut frob = Vec::with_capacity(ext_degree as usize);
        let mut power = 1u64;
        for _ in 0..ext_degree {
            let table: Vec<u32> = (0..order)
                .map(|x| {
                    if x == 0 {
                        0
                    } else {
                        exp[((log[x as usize] as u64 * power) % (order as u64 - 1)) as usize]
                    }
                })
                .collect();
            frob.push(table);
            power = (power * q) % (order as u64 - 1).max(1);
        }
        let base = (0..order).filter(|&x| frob.get(1).map_or(true, |f| f[x as usize] == x)).collect();

        Ok(GaloisFieldTower {
            p,
            base_degree,
            ext_degree,
            order,
            modulus,
            exp,
            log,
            add,
            neg,
            frob,
            base,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// `q = |k|`.
    pub fn base_order(&self) -> u32 {
        self.p.pow(self.base_degree)
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    /// `m = [K : k]`, the order of the Galois group.
    pub fn ext_degree(&self) -> u32 {
        self.ext_degree
    }

    /// `|K|`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients `c_0 … c_{D−1}` of the monic modulus `x^D + Σ c_i x^i`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Elements of `k`, in increasing code order.
    pub fn base_elements(&self) -> &[u32] {
        &self.base
    }

    pub fn is_base(&self, x: u32) -> bool {
        self.frob(1 % self.ext_degree, x) == x
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.mod_floor(&(self.p as i64)) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &self.add {
            return t[(a * self.order + b) as usize] as u32;
        }
        let (mut a, mut b, mut out, mut scale) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        let n = self.order - 1;
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplicative inverse; `0` has none.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `x ↦ x^(q^k)`.
    pub fn frob(&self, k: u32, x: u32) -> u32 {
        self.frob[(k % self.ext_degree) as usize][x as usize]
    }

    /// `x^i` for the primitive root `x`.
    pub fn primitive_power(&self, i: u64) -> u32 {
        self.exp[(i % (self.order as u64 - 1)) as usize]
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }
}

fn times_x(digits: &mut [u32], modulus: &[u32], p: u32) {
    let d = digits.len();
    let carry = digits[d - 1];
    for i in (1..d).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    for i in 0..d {
        digits[i] = (digits[i] + (p - carry * modulus[i] % p)) % p;
    }
}

/// The first monic polynomial of degree `dim` over `F_p`, in increasing order
/// of `Σ c_i p^i`, whose root generates `F_{p^dim}^*`.
fn primitive_modulus(p: u32, dim: usize, order: u32) -> Vec<u32> {
    let candidates = (p as u64).pow(dim as u32);
    for code in 0..candidates {
        let mut rest = code;
        let modulus: Vec<u32> = (0..dim)
            .map(|_| {
                let c = (rest % p as u64) as u32;
                rest /= p as u64;
                c
            })
            .collect();
        if modulus[0] == 0 {
            continue;
        }
        let mut cur = vec![0u32; dim];
        cur[0] = 1;
        let mut period = 0u32;
        loop {
            times_x(&mut cur, &modulus, p);
            period += 1;
            if cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
                break;
            }
            if period >= order {
                break;
            }
        }
        if period == order - 1 {
            return modulus;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}
