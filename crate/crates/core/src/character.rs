//! Traces and additive characters of `F_q`, valued in a prime field `F_ℓ`
//! that contains a primitive `p`-th root of unity.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, Ffe};

#[derive(Clone, Debug)]
pub struct CharacterCtx {
    q_field: FieldCtx,
    host: FieldCtx,
    zeta: u32,
    trace_table: Vec<u32>,
}

/// An element of exact multiplicative order `p` in the prime field `host`.
pub fn find_root_of_unity(p: u64, host: &FieldCtx) -> Result<Ffe> {
    let hf = match host.finite() {
        Some(f) if f.degree() == 1 => f,
        _ => return Err(Error::InvalidField(format!("host {} must be a prime field", host))),
    };
    if !is_prime(p) {
        return Err(Error::CompositeCharacteristic(p));
    }
    let ell = hf.p() as u64;
    if !(ell - 1).is_multiple_of(p) {
        return Err(Error::NoRootOfUnity { p, host: ell });
    }
    let exp = (ell - 1) / p;
    for g in 2..ell as u32 {
        let z = hf.pow(g, exp);
        if z != 1 {
            // z^p = g^(ℓ-1) = 1 and z ≠ 1, so with p prime the order is p
            debug_assert_eq!(hf.pow(z, p), 1);
            return Ok(Ffe::Finite(z));
        }
    }
    Err(Error::NoRootOfUnity { p, host: ell })
}

/// Smallest prime `ℓ ≠ p` with `ℓ ≡ 1 (mod p)`.
pub fn default_host_prime(p: u64) -> u64 {
    let mut ell = p + 1;
    loop {
        if ell != p && is_prime(ell) && (ell - 1).is_multiple_of(p) {
            return ell;
        }
        ell += 1;
    }
}

impl CharacterCtx {
    /// Character context over the default host prime field.
    pub fn new(q_field: &FieldCtx) -> Result<Self> {
        let p = q_field.characteristic();
        if p == 0 {
            return Err(Error::InvalidField("characters need a finite field".into()));
        }
        let host = FieldCtx::prime(default_host_prime(p))?;
        Self::with_host(q_field, &host)
    }

    pub fn with_host(q_field: &FieldCtx, host: &FieldCtx) -> Result<Self> {
        let qf = q_field
            .finite()
            .ok_or_else(|| Error::InvalidField("characters need a finite field".into()))?;
        let p = qf.p() as u64;
        let zeta = match find_root_of_unity(p, host)? {
            Ffe::Finite(z) => z,
            Ffe::Rational(_) => unreachable!(),
        };
        let trace_table = (0..qf.order())
            .map(|x| {
                let mut acc = 0;
                let mut pw = x;
                for _ in 0..qf.degree() {
                    acc = qf.add(acc, pw);
                    pw = qf.pow(pw, p);
                }
                debug_assert!(acc < qf.p());
                acc
            })
            .collect();
        Ok(CharacterCtx { q_field: q_field.clone(), host: host.clone(), zeta, trace_table })
    }

    pub fn q_field(&self) -> &FieldCtx {
        &self.q_field
    }

    pub fn host(&self) -> &FieldCtx {
        &self.host
    }

    pub fn zeta(&self) -> Ffe {
        Ffe::Finite(self.zeta)
    }

    /// `x + x^p + ... + x^{p^{t-1}}`, an element of the prime subfield.
    pub fn trace(&self, x: &Ffe) -> Result<Ffe> {
        self.trace_code(x).map(Ffe::Finite)
    }

    fn trace_code(&self, x: &Ffe) -> Result<u32> {
        match x {
            Ffe::Finite(c) if (*c as usize) < self.trace_table.len() => Ok(self.trace_table[*c as usize]),
            _ => Err(Error::FieldMismatch(self.q_field.name())),
        }
    }

    /// `θ(x) = ζ^{Tr(x)}`.
    pub fn additive_character(&self, x: &Ffe) -> Result<Ffe> {
        let t = self.trace_code(x)?;
        Ok(Ffe::Finite(self.theta_code(t)))
    }

    /// θ on a raw `F_q` code, returning a raw host code.
    pub(crate) fn theta_raw(&self, x: u32) -> u32 {
        self.theta_code(self.trace_table[x as usize])
    }

    fn theta_code(&self, trace: u32) -> u32 {
        let hf = self.host.finite().expect("host is finite");
        hf.pow(self.zeta, trace as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> CharacterCtx {
        CharacterCtx::new(&FieldCtx::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn traces() {
        let c = ctx("gf2");
        assert_eq!(c.trace(&Ffe::Finite(0)).unwrap(), Ffe::Finite(0));
        assert_eq!(c.trace(&Ffe::Finite(1)).unwrap(), Ffe::Finite(1));
        // x is code 2 in F_4 = F_2[x]/(x^2+x+1)
        assert_eq!(ctx("gf2^2").trace(&Ffe::Finite(2)).unwrap(), Ffe::Finite(1));
        // x is code 3 in F_9 = F_3[x]/(x^2+1)
        assert_eq!(ctx("gf3^2").trace(&Ffe::Finite(3)).unwrap(), Ffe::Finite(0));
        assert!(c.trace(&Ffe::Finite(2)).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(find_root_of_unity(2, &f3).unwrap(), Ffe::Finite(2));
        let f7 = FieldCtx::prime(7).unwrap();
        let z = find_root_of_unity(3, &f7).unwrap();
        assert!(z == Ffe::Finite(2) || z == Ffe::Finite(4));
        assert_eq!(find_root_of_unity(2, &f7).unwrap(), Ffe::Finite(6));
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(find_root_of_unity(3, &f5).unwrap_err(), Error::NoRootOfUnity { p: 3, host: 5 });
    }

    #[test]
    fn root_orders() {
        for (p, ell) in [(2u64, 3u64), (3, 7), (5, 11), (2, 7), (3, 13), (7, 29)] {
            let h = FieldCtx::prime(ell).unwrap();
            let z = find_root_of_unity(p, &h).unwrap();
            assert_eq!(h.pow(&z, p), h.one());
            for k in 1..p {
                assert_ne!(h.pow(&z, k), h.one());
            }
        }
    }

    #[test]
    fn default_hosts() {
        assert_eq!(default_host_prime(2), 3);
        assert_eq!(default_host_prime(3), 7);
        assert_eq!(default_host_prime(5), 11);
    }

    #[test]
    fn theta_examples() {
        let c = ctx("gf2");
        assert_eq!(c.additive_character(&Ffe::Finite(0)).unwrap(), Ffe::Finite(1));
        assert_eq!(c.additive_character(&Ffe::Finite(1)).unwrap(), Ffe::Finite(2));
    }

    #[test]
    fn trace_linear_and_surjective() {
        for s in ["gf2", "gf3", "gf2^2", "gf3^2"] {
            let c = ctx(s);
            let qf = c.q_field().finite().unwrap().clone();
            let mut hit = alloc::vec![false; qf.p() as usize];
            for x in 0..qf.order() {
                let tx = c.trace_code(&Ffe::Finite(x)).unwrap();
                hit[tx as usize] = true;
                for y in 0..qf.order() {
                    let ty = c.trace_code(&Ffe::Finite(y)).unwrap();
                    let txy = c.trace_code(&Ffe::Finite(qf.add(x, y))).unwrap();
                    assert_eq!(txy, (tx + ty) % qf.p());
                }
            }
            assert!(hit.iter().all(|&h| h), "{} trace not surjective", s);
        }
    }

    #[test]
    fn character_homomorphism_and_orthogonality() {
        for s in ["gf2", "gf3", "gf2^2", "gf3^2", "gf5"] {
            let c = ctx(s);
            let qf = c.q_field().finite().unwrap().clone();
            let h = c.host().clone();
            for x in 0..qf.order() {
                for y in 0..qf.order() {
                    let lhs = c.additive_character(&Ffe::Finite(qf.add(x, y))).unwrap();
                    let rhs = h.mul(
                        &c.additive_character(&Ffe::Finite(x)).unwrap(),
                        &c.additive_character(&Ffe::Finite(y)).unwrap(),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
            for k in 1..qf.order() {
                let mut sum = h.zero();
                for x in 0..qf.order() {
                    sum = h.add(&sum, &c.additive_character(&Ffe::Finite(qf.mul(k, x))).unwrap());
                }
                assert!(h.is_zero(&sum), "{}: character sum nonzero for c = {}", s, k);
            }
        }
    }
}
