//! Certified irreducibility over `Q` for small integer polynomials.
//!
//! Degrees 2 and 3 are decided exactly by searching for rational roots.
//! Higher degrees use distinct-degree factorisation modulo several primes:
//! any factorisation over `Q` induces one modulo every good prime, so if no
//! proper factor degree is achievable modulo all tested primes the
//! polynomial is irreducible. When the primes leave some factor degrees
//! open (as for `x^4 + 1`, which splits modulo every prime), those degrees
//! are settled by searching integer factors up to the Mahler-measure bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;
use super::rational::{self, Rational};
use super::roots::{isolate_real_roots, refine_root};
use super::ExactError;

/// Whether `p` has a rational root. Works for any degree by isolating the
/// real roots and testing the few candidates `k / lead` in each interval.
pub fn has_rational_root(p: &IntPolynomial) -> Result<bool, ExactError> {
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(false);
    }
    if sf.coeffs()[0].is_zero() {
        return Ok(true);
    }
    let lead = sf.leading().expect("nonzero").abs();
    // Distinct rationals with denominator dividing `lead` are 1/lead apart.
    let width = Rational::new(BigInt::from(1), &lead * BigInt::from(2));
    let lead_r = Rational::from_integer(lead.clone());
    for iso in isolate_real_roots(&sf)? {
        let iv = refine_root(&sf, &iso, &width)?;
        let a = rational::ceil(&(iv.lo() * &lead_r));
        let b = rational::floor(&(iv.hi() * &lead_r));
        let mut k = a;
        while k <= b {
            if sf.sign_at(&Rational::new(k.clone(), lead.clone())) == 0 {
                return Ok(true);
            }
            k += 1;
        }
    }
    Ok(false)
}

/// `Some(true)` when irreducibility is certified, `Some(false)` when a
/// factorisation is certain, `None` when the modular test is inconclusive.
pub fn is_irreducible(p: &IntPolynomial) -> Result<Option<bool>, ExactError> {
    let d = p.degree().ok_or(ExactError::ZeroPolynomial)?;
    if d == 0 {
        return Ok(Some(false));
    }
    let p = &p.primitive_part()?;
    if d == 1 {
        return Ok(Some(true));
    }
    if !p.is_squarefree() {
        return Ok(Some(false));
    }
    if has_rational_root(p)? {
        return Ok(Some(false));
    }
    if d <= 3 {
        return Ok(Some(true));
    }
    let open = modular_open_degrees(p);
    let mut undecided = false;
    for k in open.into_iter().filter(|&k| 2 * k <= d) {
        match factor_search(p, k) {
            Some(true) => return Ok(Some(false)),
            Some(false) => {}
            None => undecided = true,
        }
    }
    Ok(if undecided { None } else { Some(true) })
}

/// Largest search space `factor_search` will walk.
const FACTOR_SEARCH_CAP: u128 = 20_000_000;

/// Looks for a degree-`k` integer factor of `p` (`k >= 2`, `p` primitive,
/// without rational roots). `None` when the search space is too large.
fn factor_search(p: &IntPolynomial, k: usize) -> Option<bool> {
    // Any factor g satisfies |g_j| <= binom(k, j) M(p) <= binom(k, j) ||p||_2.
    let norm2: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    let norm = rational::to_biguint(&norm2).sqrt() + 1u32;
    let binom = |j: usize| -> BigInt { (0..j).fold(BigInt::from(1), |acc, i| acc * BigInt::from(k - i) / BigInt::from(i + 1)) };
    let bounds: Vec<BigInt> = (0..=k).map(|j| binom(j) * BigInt::from(norm.clone())).collect();
    let lead_divs = divisors(p.leading().expect("nonzero"));
    let const_divs = divisors(&p.coeffs()[0]);
    let mut space: u128 = (lead_divs.len() * const_divs.len() * 2) as u128;
    for b in &bounds[1..k] {
        space = space.saturating_mul((b * 2u32 + 1u32).to_u128().unwrap_or(u128::MAX));
    }
    if space > FACTOR_SEARCH_CAP {
        return None;
    }
    let target = p.to_rational();
    for l in &lead_divs {
        for c0 in &const_divs {
            for sign in [1i32, -1] {
                let c0 = c0 * sign;
                let mut mid: Vec<BigInt> = bounds[1..k].iter().map(|b| -b).collect();
                loop {
                    let mut g = vec![c0.clone()];
                    g.extend(mid.iter().cloned());
                    g.push(l.clone());
                    let g = IntPolynomial::new(g);
                    if upoly_divides(&g, &target) {
                        return Some(true);
                    }
                    // Odometer over the middle coefficients.
                    let mut i = 0;
                    loop {
                        if i == mid.len() {
                            break;
                        }
                        if mid[i] < bounds[i + 1] {
                            mid[i] += 1;
                            break;
                        }
                        mid[i] = -bounds[i + 1].clone();
                        i += 1;
                    }
                    if i == mid.len() {
                        break;
                    }
                }
            }
        }
    }
    Some(false)
}

fn upoly_divides(g: &IntPolynomial, target: &[Rational]) -> bool {
    super::upoly::rem(target, &g.to_rational()).is_empty()
}

/// Positive divisors of a nonzero integer (small inputs only).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::from(1);
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let j = &n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}

fn small_primes(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; limit as usize + 1];
    let mut out = Vec::new();
    for i in 2..=limit as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Proper factor degrees still compatible with the factorisation patterns
/// of `p` modulo small primes. Empty means `p` is irreducible.
fn modular_open_degrees(p: &IntPolynomial) -> Vec<usize> {
    let d = p.degree().expect("nonzero");
    // possible[k] = factor degree k is compatible with every prime seen so far.
    let mut possible = vec![true; d + 1];
    let mut good = 0;
    for prime in small_primes(2000) {
        let lead = p.leading().expect("nonzero").mod_floor(&BigInt::from(prime));
        if lead.is_zero() {
            continue;
        }
        let f: Vec<u64> = p
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(prime)).to_u64().expect("reduced"))
            .collect();
        let f = modp::monic(&f, prime);
        if modp::gcd(&f, &modp::derivative(&f, prime), prime).len() != 1 {
            continue;
        }
        let degrees = modp::distinct_degree(&f, prime);
        let mut sums = vec![false; d + 1];
        sums[0] = true;
        for &k in &degrees {
            for s in (k..=d).rev() {
                if sums[s - k] {
                    sums[s] = true;
                }
            }
        }
        for k in 0..=d {
            possible[k] &= sums[k];
        }
        good += 1;
        if (1..d).all(|k| !possible[k]) || good >= 40 {
            break;
        }
    }
    (1..d).filter(|&k| possible[k]).collect()
}

/// Polynomial arithmetic over `F_p` with `p < 2^32`; ascending coefficients.
mod modp {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        let a = trim(a.to_vec());
        match a.last() {
            None => a,
            Some(&l) => {
                let li = inv(l, p);
                a.iter().map(|c| c * li % p).collect()
            }
        }
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect())
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let li = inv(*b.last().expect("nonzero divisor"), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r[r.len() - 1] * li % p;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
            }
            q[shift] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = divrem(&x, &y, p).1;
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = divrem(base, f, p).1;
        while e > 0 {
            if e & 1 == 1 {
                result = divrem(&mul(&result, &b, p), f, p).1;
            }
            b = divrem(&mul(&b, &b, p), f, p).1;
            e >>= 1;
        }
        result
    }

    /// Degrees of the irreducible factors of a monic square-free `f`.
    pub fn distinct_degree(f: &[u64], p: u64) -> Vec<usize> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut i = 1;
        while f.len() > 1 && 2 * i <= f.len() - 1 {
            h = powmod(&h, p, &f, p);
            let g = gcd(&f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                for _ in 0..(g.len() - 1) / i {
                    out.push(i);
                }
                f = divrem(&f, &g, p).0;
                h = divrem(&h, &f, p).1;
            }
            i += 1;
        }
        if f.len() > 1 {
            out.push(f.len() - 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn low_degree_decisions() {
        assert_eq!(is_irreducible(&poly(&[-2, 0, 1])).unwrap(), Some(true));
        assert_eq!(is_irreducible(&poly(&[-1, 0, 1])).unwrap(), Some(false));
        assert_eq!(is_irreducible(&poly(&[-2, 0, 0, 1])).unwrap(), Some(true));
        assert_eq!(is_irreducible(&poly(&[-3, 2, 0, 1])).unwrap(), Some(false)); // root 1
        assert_eq!(is_irreducible(&poly(&[-1, 0, 4])).unwrap(), Some(false)); // roots +-1/2
    }

    #[test]
    fn quartics() {
        // x^4 - 2 is irreducible (Eisenstein).
        assert_eq!(is_irreducible(&poly(&[-2, 0, 0, 0, 1])).unwrap(), Some(true));
        // (x^2 - 2)(x^2 - 3) has no rational root but factors.
        assert_eq!(is_irreducible(&poly(&[6, 0, -5, 0, 1])).unwrap(), Some(false));
        // x^4 + 1 splits modulo every prime but is irreducible over Q.
        assert_eq!(is_irreducible(&poly(&[1, 0, 0, 0, 1])).unwrap(), Some(true));
        // (x^2 + x + 1)(2x^2 - 3)
        assert_eq!(is_irreducible(&poly(&[-3, -3, -1, 2, 2])).unwrap(), Some(false));
        // x^5 - 3 is irreducible.
        assert_eq!(is_irreducible(&poly(&[-3, 0, 0, 0, 0, 1])).unwrap(), Some(true));
    }

    #[test]
    fn rational_roots_found() {
        assert!(has_rational_root(&poly(&[-3, 2])).unwrap());
        assert!(has_rational_root(&poly(&[0, -2, 0, 1])).unwrap());
        assert!(!has_rational_root(&poly(&[-2, 0, 1])).unwrap());
        assert!(has_rational_root(&poly(&[-10, 7, 6])).unwrap()); // roots 5/6 and -2
    }
}
