//! Exact arithmetic in the real cyclotomic field Q(2cos(pi/m)).
//!
//! Elements are polynomials in the generator g = 2cos(pi/m), reduced modulo
//! its minimal polynomial and stored in the power basis with rational
//! coefficients. The minimal polynomial is derived at context creation for any
//! m >= 3 (nothing is hardcoded): the cyclotomic polynomial Phi_2m is computed
//! by exact integer division and collapsed through the palindromic
//! substitution z^k + z^-k = D_k(z + 1/z), where D_k is the Chebyshev-style
//! basis obtained from the three-term recursion that also drives [`FieldContext::cosmul`].
//!
//! Sign determination is certified: the generator is isolated as the largest
//! real root of its minimal polynomial by exact Sturm bisection (no floating
//! point anywhere in the decision path) and signs are decided by rational
//! interval evaluation at increasing precision, with an exact-zero
//! short-circuit through the canonical representation.

use alloc::vec::Vec;
use alloc::{format, string::String, vec};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Starting precision (in bits of generator-interval width) for the sign
/// oracle. Purely a performance knob: results never depend on it.
pub const DEFAULT_SIGN_START_BITS: u32 = 64;

/// Precision the generator interval is refined to at context creation, so the
/// first one or two rounds of every sign query need no further bisection.
const CREATION_REFINE_BITS: u32 = 128;

/// Hard ceiling for sign-refinement precision. A nonzero field element of the
/// sizes this crate produces is decided within a few hundred bits; hitting the
/// ceiling indicates a corrupted element, so we stop instead of spinning.
const SIGN_BITS_CEILING: u32 = 1 << 16;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// The dihedral order parameter must satisfy m >= 3.
    UnsupportedOrder { m: u32 },
    /// Inversion or division by the zero element.
    DivisionByZero,
    /// An element of the wrong coefficient length was passed to a context.
    WrongField { expected: usize, got: usize },
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::UnsupportedOrder { m } => {
                write!(f, "dihedral order m = {m} is not supported (need m >= 3)")
            }
            ExactError::DivisionByZero => write!(f, "division by zero field element"),
            ExactError::WrongField { expected, got } => write!(
                f,
                "element has {got} coefficients but this field has degree {expected}"
            ),
        }
    }
}

/// An element of Q(2cos(pi/m)) in canonical form: exactly `degree` rational
/// coefficients in the power basis of the generator. Canonical form makes
/// structural equality the same as field equality, so `Eq` is derived.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloReal {
    coeffs: Vec<BigRational>,
}

impl CycloReal {
    /// Power-basis coefficients (constant term first, length = field degree).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// True iff this is the zero element. Valid as an exact test because the
    /// representation is canonical: a polynomial of degree below the minimal
    /// polynomial's vanishes at the generator only when all coefficients do.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True iff the element is a rational number (no generator contribution).
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, if [`Self::is_rational`].
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            self.coeffs.first()
        } else {
            None
        }
    }
}

/// The field Q(2cos(pi/m)) together with everything needed to compute in it:
/// the minimal polynomial of the generator, its Sturm chain, an exactly
/// isolated rational interval around the generator, and a table of the
/// cosines cos(k pi / m) as field elements.
///
/// Immutable after construction and shareable read-only across threads.
#[derive(Clone, Debug)]
pub struct FieldContext {
    m: u32,
    degree: usize,
    /// Monic minimal polynomial of g = 2cos(pi/m), integer coefficients,
    /// constant term first, length `degree + 1`.
    minpoly: Vec<BigInt>,
    /// Minimal polynomial as rationals (for evaluation convenience).
    minpoly_rat: Vec<BigRational>,
    /// Isolating interval for the generator: minpoly(lo) < 0 < minpoly(hi)
    /// and exactly one root inside, unless `exact_root` is set.
    iso_lo: BigRational,
    iso_hi: BigRational,
    /// Set when the generator is rational (degree 1, i.e. m = 3).
    exact_root: Option<BigRational>,
    /// cos(k pi / m) for k = 0..2m as field elements.
    cos_table: Vec<CycloReal>,
    sign_start_bits: u32,
}

impl FieldContext {
    /// Build the field for a dihedral order m >= 3. Derives the minimal
    /// polynomial of 2cos(pi/m), checks its degree against an independent
    /// totient computation, and isolates the generator exactly.
    pub fn new(m: u32) -> Result<FieldContext, ExactError> {
        if m < 3 {
            return Err(ExactError::UnsupportedOrder { m });
        }
        let phi2m = cyclotomic_poly(2 * m);
        let minpoly = halved_palindrome(&phi2m);
        let degree = minpoly.len() - 1;
        // Independent check: [Q(2cos(pi/m)) : Q] = phi(2m)/2.
        assert_eq!(
            degree,
            (euler_phi(2 * m) / 2) as usize,
            "minimal-polynomial degree disagrees with phi(2m)/2"
        );
        assert!(minpoly.last().map(One::is_one).unwrap_or(false), "minimal polynomial must be monic");

        let minpoly_rat: Vec<BigRational> =
            minpoly.iter().map(|c| BigRational::from_integer(c.clone())).collect();

        let mut ctx = FieldContext {
            m,
            degree,
            minpoly,
            minpoly_rat,
            iso_lo: big_rat(-2),
            iso_hi: big_rat(2),
            exact_root: None,
            cos_table: Vec::new(),
            sign_start_bits: DEFAULT_SIGN_START_BITS,
        };

        if degree == 1 {
            // g is rational: the unique root of a monic linear polynomial.
            let root = -&ctx.minpoly_rat[0];
            ctx.exact_root = Some(root.clone());
            ctx.iso_lo = root.clone();
            ctx.iso_hi = root;
        } else {
            let chain = sturm_chain(&ctx.minpoly_rat);
            let (lo, hi) = isolate_largest_root(&ctx.minpoly_rat, &chain, degree);
            let (lo, hi) = refine_interval(&ctx.minpoly_rat, lo, hi, CREATION_REFINE_BITS);
            ctx.iso_lo = lo;
            ctx.iso_hi = hi;
        }

        ctx.cos_table = ctx.build_cos_table();
        Ok(ctx)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic minimal polynomial of the generator (constant term first).
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Performance knob for the sign oracle's starting precision; never
    /// affects which sign is returned.
    pub fn set_sign_start_bits(&mut self, bits: u32) {
        self.sign_start_bits = bits.clamp(8, SIGN_BITS_CEILING);
    }

    // ----- constructors -------------------------------------------------

    pub fn zero(&self) -> CycloReal {
        CycloReal { coeffs: vec![BigRational::zero(); self.degree] }
    }

    pub fn one(&self) -> CycloReal {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, q: BigRational) -> CycloReal {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[0] = q;
        CycloReal { coeffs }
    }

    pub fn from_int(&self, v: i64) -> CycloReal {
        self.from_rational(big_rat(v))
    }

    /// The generator g = 2cos(pi/m).
    pub fn generator(&self) -> CycloReal {
        if let Some(root) = &self.exact_root {
            return self.from_rational(root.clone());
        }
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[1] = BigRational::one();
        CycloReal { coeffs }
    }

    /// Build an element from arbitrary power-basis coefficients, reducing
    /// modulo the minimal polynomial if more than `degree` are given.
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycloReal {
        CycloReal { coeffs: self.reduce(coeffs) }
    }

    /// cos(t * pi / m) as an exact field element, any integer t.
    ///
    /// Uses the three-term recursion 2cos((k+1)a) = g * 2cos(ka) - 2cos((k-1)a)
    /// (a = pi/m), evaluated once into a table at context creation.
    pub fn cosmul(&self, t: i64) -> CycloReal {
        let period = 2 * self.m as i64;
        let k = t.rem_euclid(period) as usize;
        self.cos_table[k].clone()
    }

    // ----- arithmetic ----------------------------------------------------

    pub fn add(&self, a: &CycloReal, b: &CycloReal) -> CycloReal {
        self.check(a);
        self.check(b);
        CycloReal {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &CycloReal, b: &CycloReal) -> CycloReal {
        self.check(a);
        self.check(b);
        CycloReal {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &CycloReal) -> CycloReal {
        CycloReal { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &CycloReal, b: &CycloReal) -> CycloReal {
        self.check(a);
        self.check(b);
        if self.degree == 1 {
            return CycloReal { coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] };
        }
        let mut prod = vec![BigRational::zero(); 2 * self.degree - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        CycloReal { coeffs: self.reduce(prod) }
    }

    pub fn mul_rat(&self, a: &CycloReal, q: &BigRational) -> CycloReal {
        CycloReal { coeffs: a.coeffs.iter().map(|x| x * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo the (irreducible) minimal polynomial.
    pub fn inv(&self, a: &CycloReal) -> Result<CycloReal, ExactError> {
        self.check(a);
        if a.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.degree == 1 {
            return Ok(CycloReal { coeffs: vec![a.coeffs[0].recip()] });
        }
        // Extended Euclid on (minpoly, a): maintain r = s*minpoly + t*a.
        let mut r0 = self.minpoly_rat.clone();
        let mut r1 = poly_trim(a.coeffs.clone());
        let mut t0: Vec<BigRational> = vec![];
        let mut t1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let tq = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = tq;
        }
        // r0 is a nonzero constant gcd (minpoly irreducible, a nonzero).
        assert_eq!(r0.len(), 1, "generator polynomial must be irreducible");
        let scale = r0[0].recip();
        let coeffs: Vec<BigRational> = t0.iter().map(|c| c * &scale).collect();
        Ok(CycloReal { coeffs: self.reduce(coeffs) })
    }

    pub fn div(&self, a: &CycloReal, b: &CycloReal) -> Result<CycloReal, ExactError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    // ----- ordering ------------------------------------------------------

    /// Certified sign of an element: `Ordering::Equal` exactly when the
    /// element is zero, decided structurally; otherwise by interval
    /// refinement around the isolated generator, escalating precision until
    /// the interval excludes zero.
    pub fn sign(&self, a: &CycloReal) -> Ordering {
        self.check(a);
        if a.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = a.as_rational() {
            return rat_sign(q);
        }
        let mut bits = self.sign_start_bits.max(8);
        loop {
            let (lo, hi) = self.generator_interval(bits);
            let iv = interval_eval(&a.coeffs, &lo, &hi);
            if rat_sign(&iv.0) == Ordering::Greater {
                return Ordering::Greater;
            }
            if rat_sign(&iv.1) == Ordering::Less {
                return Ordering::Less;
            }
            assert!(
                bits < SIGN_BITS_CEILING,
                "sign refinement exceeded {SIGN_BITS_CEILING} bits on a nonzero element"
            );
            bits = bits.saturating_mul(2);
        }
    }

    pub fn cmp(&self, a: &CycloReal, b: &CycloReal) -> Ordering {
        self.sign(&self.sub(a, b))
    }

    pub fn is_positive(&self, a: &CycloReal) -> bool {
        self.sign(a) == Ordering::Greater
    }

    pub fn is_negative(&self, a: &CycloReal) -> bool {
        self.sign(a) == Ordering::Less
    }

    /// Absolute value.
    pub fn abs(&self, a: &CycloReal) -> CycloReal {
        if self.sign(a) == Ordering::Less {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    // ----- approximation -------------------------------------------------

    /// A rational interval [lo, hi] containing the generator with
    /// hi - lo <= 2^-bits. Deterministic; refined by exact bisection of the
    /// isolating interval (signs of the minimal polynomial at the midpoint).
    pub fn generator_interval(&self, bits: u32) -> (BigRational, BigRational) {
        if let Some(root) = &self.exact_root {
            return (root.clone(), root.clone());
        }
        refine_interval(&self.minpoly_rat, self.iso_lo.clone(), self.iso_hi.clone(), bits)
    }

    /// Floating shadow of an element (not used in any exact decision).
    pub fn approx_f64(&self, a: &CycloReal) -> f64 {
        let (lo, hi) = self.generator_interval(80);
        let mid = (lo + hi) / big_rat(2);
        let mut acc = BigRational::zero();
        for c in a.coeffs.iter().rev() {
            acc = acc * &mid + c;
        }
        acc.to_f64().unwrap_or(f64::NAN)
    }

    /// Render an element as a human-readable polynomial in g.
    pub fn display(&self, a: &CycloReal) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 => format!("{c}*g"),
                _ => format!("{c}*g^{i}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return String::from("0");
        }
        parts.join(" + ")
    }

    // ----- internals ------------------------------------------------------

    fn check(&self, a: &CycloReal) {
        assert_eq!(
            a.coeffs.len(),
            self.degree,
            "element has {} coefficients but field degree is {}",
            a.coeffs.len(),
            self.degree
        );
    }

    /// Reduce arbitrary power-basis coefficients modulo the minimal
    /// polynomial and pad to canonical length.
    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        while coeffs.len() > d {
            let top = coeffs.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            // The popped entry multiplied x^(d + shift); substitute
            // x^(d + shift) = -x^shift * (lower part of the monic minpoly).
            let shift = coeffs.len() - d;
            for i in 0..d {
                let delta = &top * &self.minpoly_rat[i];
                coeffs[shift + i] -= delta;
            }
        }
        coeffs.resize(d, BigRational::zero());
        coeffs
    }

    fn build_cos_table(&self) -> Vec<CycloReal> {
        // d_k = 2 cos(k pi / m): d_0 = 2, d_1 = g, d_{k+1} = g d_k - d_{k-1}.
        let two = 2 * self.m as usize;
        let g = self.generator();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut d_prev = self.from_int(2);
        let mut d_cur = g.clone();
        let mut table = Vec::with_capacity(two);
        table.push(self.mul_rat(&d_prev, &half));
        table.push(self.mul_rat(&d_cur, &half));
        for _ in 2..two {
            let d_next = self.sub(&self.mul(&g, &d_cur), &d_prev);
            table.push(self.mul_rat(&d_next, &half));
            d_prev = d_cur;
            d_cur = d_next;
        }
        table
    }
}

// ---------------------------------------------------------------------------
// rational helpers
// ---------------------------------------------------------------------------

pub(crate) fn big_rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn rat_sign(q: &BigRational) -> Ordering {
    if q.is_zero() {
        Ordering::Equal
    } else if q.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// 2^-bits as a rational.
fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

// ---------------------------------------------------------------------------
// dense polynomial helpers over Q (little-endian coefficient vectors)
// ---------------------------------------------------------------------------

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

/// Quotient and remainder of dense division (denominator nonzero).
fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = poly_trim(den.to_vec());
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem = poly_trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    let lead = den.last().expect("nonempty").clone();
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let factor = rem.last().expect("nonempty") / &lead;
        quot[shift] = factor.clone();
        for (i, d) in den.iter().enumerate() {
            let delta = &factor * d;
            rem[shift + i] -= delta;
        }
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * big_rat(i as i64))
        .collect()
}

// ---------------------------------------------------------------------------
// integer polynomials and cyclotomic construction
// ---------------------------------------------------------------------------

fn int_poly_trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials (panics if not exact — only used
/// where divisibility is a theorem).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let den = int_poly_trim(den.to_vec());
    let mut rem: Vec<BigInt> = num.to_vec();
    rem = int_poly_trim(rem);
    assert!(rem.len() >= den.len(), "inexact polynomial division");
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    let lead = den.last().expect("nonempty").clone();
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let top = rem.last().expect("nonempty").clone();
        let (factor, residue) = num_integer::Integer::div_rem(&top, &lead);
        assert!(residue.is_zero(), "inexact polynomial division");
        quot[shift] = factor.clone();
        for (i, d) in den.iter().enumerate() {
            let delta = &factor * d;
            rem[shift + i] -= delta;
        }
        rem = int_poly_trim(rem);
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            out.push(d);
        }
    }
    out
}

pub(crate) fn euler_phi(n: u32) -> u32 {
    let mut count = 0;
    for k in 1..=n {
        if num_integer::Integer::gcd(&k, &n) == 1 {
            count += 1;
        }
    }
    count
}

/// n-th cyclotomic polynomial by the exact-division recurrence
/// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    let mut memo: Vec<(u32, Vec<BigInt>)> = Vec::new();
    for d in divisors(n) {
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        let mut den = vec![BigInt::one()];
        for (e, phi_e) in &memo {
            if d % e == 0 && *e < d {
                den = int_poly_mul(&den, phi_e);
            }
        }
        let phi_d = int_poly_div_exact(&num, &den);
        memo.push((d, phi_d));
    }
    memo.pop().expect("n has at least one divisor").1
}

/// Collapse a palindromic polynomial P(z) of even degree 2d to the monic
/// Q(y) of degree d with P(z) = z^d * Q(z + 1/z), via the basis
/// D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1} (so D_k(z + 1/z) = z^k + z^-k).
fn halved_palindrome(p: &[BigInt]) -> Vec<BigInt> {
    let deg = p.len() - 1;
    assert!(deg >= 2 && deg % 2 == 0, "expected even degree >= 2");
    let d = deg / 2;
    for k in 0..=deg {
        assert_eq!(p[k], p[deg - k], "polynomial is not palindromic");
    }
    let mut dk_prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut dk_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    let mut out = vec![BigInt::zero(); d + 1];
    out[0] = p[d].clone();
    for k in 1..=d {
        for (i, c) in dk_cur.iter().enumerate() {
            out[i] += &p[d + k] * c;
        }
        if k < d {
            // D_{k+1} = y * D_k - D_{k-1}
            let mut next = vec![BigInt::zero(); dk_cur.len() + 1];
            for (i, c) in dk_cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            for (i, c) in dk_prev.iter().enumerate() {
                next[i] -= c;
            }
            dk_prev = dk_cur;
            dk_cur = next;
        }
    }
    assert!(out.last().map(One::is_one).unwrap_or(false));
    out
}

// ---------------------------------------------------------------------------
// Sturm sequences and root isolation
// ---------------------------------------------------------------------------

fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![poly_trim(p.to_vec()), poly_derivative(p)];
    loop {
        let n = chain.len();
        let (_, r) = poly_divmod(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut variations = 0;
    for p in chain {
        let s = rat_sign(&poly_eval(p, x));
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Number of distinct real roots in the half-open interval (a, b].
fn sturm_count(chain: &[Vec<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Exactly isolate the largest real root of a squarefree monic polynomial
/// with all roots in (-2, 2), returning (lo, hi) with p(lo) < 0 < p(hi) and a
/// single root inside. Purely rational arithmetic.
fn isolate_largest_root(
    p: &[BigRational],
    chain: &[Vec<BigRational>],
    expected_roots: usize,
) -> (BigRational, BigRational) {
    let mut lo = big_rat(-2);
    let mut hi = big_rat(2);
    assert_eq!(
        sturm_count(chain, &lo, &hi),
        expected_roots,
        "all conjugates must lie in (-2, 2)"
    );
    while sturm_count(chain, &lo, &hi) > 1 {
        let mid = (&lo + &hi) / big_rat(2);
        assert!(
            !poly_eval(p, &mid).is_zero(),
            "irreducible polynomial of degree >= 2 has no rational root"
        );
        if sturm_count(chain, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert_eq!(rat_sign(&poly_eval(p, &lo)), Ordering::Less);
    assert_eq!(rat_sign(&poly_eval(p, &hi)), Ordering::Greater);
    (lo, hi)
}

/// Bisect an isolating interval (p(lo) < 0 < p(hi), single simple root)
/// until its width is at most 2^-bits.
fn refine_interval(
    p: &[BigRational],
    mut lo: BigRational,
    mut hi: BigRational,
    bits: u32,
) -> (BigRational, BigRational) {
    let target = pow2_neg(bits);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / big_rat(2);
        match rat_sign(&poly_eval(p, &mid)) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => unreachable!("irreducible polynomial has no rational root"),
        }
    }
    (lo, hi)
}

/// Evaluate a polynomial over the rational interval [lo, hi] (Horner with
/// interval arithmetic); returns rational bounds for the value.
fn interval_eval(
    coeffs: &[BigRational],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let mut acc_lo = BigRational::zero();
    let mut acc_hi = BigRational::zero();
    for c in coeffs.iter().rev() {
        // [acc_lo, acc_hi] * [lo, hi] + c
        let candidates = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let mut new_lo = candidates[0].clone();
        let mut new_hi = candidates[0].clone();
        for cand in &candidates[1..] {
            if cand < &new_lo {
                new_lo = cand.clone();
            }
            if cand > &new_hi {
                new_hi = cand.clone();
            }
        }
        acc_lo = new_lo + c;
        acc_hi = new_hi + c;
    }
    (acc_lo, acc_hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int_poly(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn m3_field_is_rational_with_generator_one() {
        let ctx = FieldContext::new(3).unwrap();
        assert_eq!(ctx.degree(), 1);
        assert_eq!(ctx.minpoly(), &int_poly(&[-1, 1])[..]);
        assert_eq!(ctx.generator(), ctx.one());
    }

    #[test]
    fn m4_minimal_polynomial_is_x2_minus_2() {
        let ctx = FieldContext::new(4).unwrap();
        assert_eq!(ctx.degree(), 2);
        assert_eq!(ctx.minpoly(), &int_poly(&[-2, 0, 1])[..]);
    }

    #[test]
    fn m5_minimal_polynomial_is_x2_minus_x_minus_1() {
        let ctx = FieldContext::new(5).unwrap();
        assert_eq!(ctx.degree(), 2);
        assert_eq!(ctx.minpoly(), &int_poly(&[-1, -1, 1])[..]);
        // Golden-ratio generator is irrational: the rational-root candidates
        // (divisors of the constant over divisors of the lead) all fail.
        for cand in [big_rat(1), big_rat(-1)] {
            assert!(!poly_eval(&ctx.minpoly_rat, &cand).is_zero());
        }
    }

    #[test]
    fn m8_minimal_polynomial_is_quartic() {
        let ctx = FieldContext::new(8).unwrap();
        assert_eq!(ctx.degree(), 4);
        assert_eq!(ctx.minpoly(), &int_poly(&[2, 0, -4, 0, 1])[..]);
    }

    #[test]
    fn degree_matches_independent_totient() {
        for m in 3..=40u32 {
            let ctx = FieldContext::new(m).unwrap();
            assert_eq!(ctx.degree() as u32, euler_phi(2 * m) / 2, "m = {m}");
        }
    }

    #[test]
    fn minpoly_annihilates_generator_to_1e30() {
        for m in [4u32, 5, 6, 7, 8, 12] {
            let ctx = FieldContext::new(m).unwrap();
            let (lo, hi) = ctx.generator_interval(220);
            let (vlo, vhi) = interval_eval(&ctx.minpoly_rat, &lo, &hi);
            let bound = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(30));
            assert!(vlo <= BigRational::zero() && BigRational::zero() <= vhi);
            assert!(&vhi - &vlo < bound, "m = {m}: interval width too large");
        }
    }

    #[test]
    fn rejects_m_below_three() {
        assert!(matches!(
            FieldContext::new(2),
            Err(ExactError::UnsupportedOrder { m: 2 })
        ));
    }

    #[test]
    fn cosmul_small_values() {
        let c3 = FieldContext::new(3).unwrap();
        assert_eq!(c3.cosmul(0), c3.one());
        assert_eq!(c3.cosmul(2), c3.from_rational(BigRational::new(BigInt::from(-1), BigInt::from(2))));
        assert_eq!(c3.cosmul(3), c3.from_int(-1));

        let c5 = FieldContext::new(5).unwrap();
        // cos(2 pi / 5) = (g - 1)/2 where g = 2cos(pi/5).
        let expected = c5.mul_rat(
            &c5.sub(&c5.generator(), &c5.one()),
            &BigRational::new(BigInt::one(), BigInt::from(2)),
        );
        assert_eq!(c5.cosmul(2), expected);
        let approx = c5.approx_f64(&c5.cosmul(2));
        assert!((approx - 0.309016994374947).abs() < 1e-12);
    }

    #[test]
    fn cosmul_periodicity_and_parity() {
        for m in [3u32, 4, 5, 6, 8] {
            let ctx = FieldContext::new(m).unwrap();
            let period = 2 * m as i64;
            for t in -3..(period + 3) {
                assert_eq!(ctx.cosmul(t), ctx.cosmul(t + period));
                assert_eq!(ctx.cosmul(t), ctx.cosmul(-t));
            }
        }
    }

    #[test]
    fn product_of_cosines_m5_is_one_quarter() {
        let ctx = FieldContext::new(5).unwrap();
        let prod = ctx.mul(&ctx.cosmul(1), &ctx.cosmul(2));
        assert_eq!(prod, ctx.from_rational(BigRational::new(BigInt::one(), BigInt::from(4))));
    }

    #[test]
    fn certified_signs_m5() {
        let ctx = FieldContext::new(5).unwrap();
        assert_eq!(ctx.sign(&ctx.cosmul(3)), Ordering::Less);
        // cos(pi/5) + cos(3pi/5) + cos(pi) = -1/2 exactly.
        let sum = ctx.add(&ctx.add(&ctx.cosmul(1), &ctx.cosmul(3)), &ctx.cosmul(5));
        assert_eq!(ctx.sign(&sum), Ordering::Less);
        assert_eq!(sum, ctx.from_rational(BigRational::new(BigInt::from(-1), BigInt::from(2))));
    }

    #[test]
    fn product_formula_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for _ in 0..1000 {
            let m = rng.gen_range(3u32..=12);
            let ctx = FieldContext::new(m).unwrap();
            let a = rng.gen_range(-30i64..30);
            let b = rng.gen_range(-30i64..30);
            // 2 cos(a t) cos(b t) = cos((a+b) t) + cos((a-b) t)
            let lhs = ctx.mul_rat(&ctx.mul(&ctx.cosmul(a), &ctx.cosmul(b)), &big_rat(2));
            let rhs = ctx.add(&ctx.cosmul(a + b), &ctx.cosmul(a - b));
            assert_eq!(lhs, rhs, "m={m} a={a} b={b}");
        }
    }

    #[test]
    fn canonical_form_idempotent_and_equality_structural() {
        let ctx = FieldContext::new(5).unwrap();
        // g^2 = g + 1 in Q(2cos(pi/5)).
        let g2 = ctx.from_coeffs(vec![BigRational::zero(), BigRational::zero(), BigRational::one()]);
        let expected = ctx.add(&ctx.generator(), &ctx.one());
        assert_eq!(g2, expected);
        let again = ctx.from_coeffs(g2.coeffs().to_vec());
        assert_eq!(again, g2);
    }

    #[test]
    fn inverse_multiplies_to_one() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for m in [4u32, 5, 8] {
            let ctx = FieldContext::new(m).unwrap();
            for _ in 0..50 {
                let coeffs: Vec<BigRational> = (0..ctx.degree())
                    .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=7))))
                    .collect();
                let a = ctx.from_coeffs(coeffs);
                if a.is_zero() {
                    continue;
                }
                let inv = ctx.inv(&a).unwrap();
                assert_eq!(ctx.mul(&a, &inv), ctx.one());
            }
        }
        let ctx = FieldContext::new(5).unwrap();
        assert!(matches!(ctx.inv(&ctx.zero()), Err(ExactError::DivisionByZero)));
    }

    #[test]
    fn sign_of_zero_is_equal_without_refinement() {
        let ctx = FieldContext::new(8).unwrap();
        assert_eq!(ctx.sign(&ctx.zero()), Ordering::Equal);
        let diff = ctx.sub(&ctx.cosmul(3), &ctx.cosmul(13));
        assert_eq!(ctx.sign(&diff), Ordering::Equal);
    }

    #[test]
    fn generator_interval_narrows_and_brackets() {
        let ctx = FieldContext::new(7).unwrap();
        let (lo64, hi64) = ctx.generator_interval(64);
        let (lo200, hi200) = ctx.generator_interval(200);
        assert!(lo64 <= lo200 && hi200 <= hi64);
        assert!(&hi200 - &lo200 <= pow2_neg(200));
        let g = 2.0 * (core::f64::consts::PI / 7.0).cos();
        let mid = (&lo64 + &hi64) / big_rat(2);
        assert!((mid.to_f64().unwrap() - g).abs() < 1e-12);
    }
}
