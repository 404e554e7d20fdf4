//! Dense gcd kernel over ℤ[t] and ℤ[t][q].
//!
//! Univariate polynomials are coefficient vectors indexed by degree; bivariate
//! polynomials are vectors of those, indexed by q-degree.  The univariate gcd
//! uses a primitive polynomial remainder sequence.  The bivariate gcd is
//! Brown's modular algorithm: evaluate t at points over a word-size prime,
//! take monic Euclidean gcds in Z_p[q], interpolate, CRT over primes, and
//! certify the lifted candidate by exact trial division.  The certificate is
//! sound without any luck assumption: evaluation points are chosen so the
//! image degree can never undershoot the true gcd degree, and a trial-divided
//! candidate of that degree must be the gcd itself.  A primitive PRS remains
//! as a fallback so termination never depends on the prime supply.
//!
//! Exact division panics on failure — a non-exact division here means a
//! kernel bug, not bad input.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type UPoly = Vec<BigInt>;
pub(crate) type BPoly = Vec<UPoly>;

pub(crate) fn u_trim(p: &mut UPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

pub(crate) fn u_is_zero(p: &UPoly) -> bool {
    p.is_empty()
}

pub(crate) fn u_is_one(p: &UPoly) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn u_neg(p: &UPoly) -> UPoly {
    p.iter().map(|c| -c).collect()
}

pub(crate) fn u_add(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    u_trim(&mut out);
    out
}

pub(crate) fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    u_trim(&mut out);
    out
}

pub(crate) fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if u_is_zero(a) || u_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    u_trim(&mut out);
    out
}

pub(crate) fn u_scale(p: &UPoly, c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|x| x * c).collect()
}

fn u_sign_norm(p: &UPoly) -> UPoly {
    if p.last().map(|c| c.is_negative()).unwrap_or(false) {
        u_neg(p)
    } else {
        p.clone()
    }
}

/// gcd of all coefficients, nonnegative; 0 for the zero polynomial.
pub(crate) fn u_content(p: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divide out the content; the result keeps a positive leading coefficient.
pub(crate) fn u_primitive(p: &UPoly) -> UPoly {
    if u_is_zero(p) {
        return Vec::new();
    }
    let mut g = u_content(p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    p.iter().map(|c| c / &g).collect()
}

/// Remainder of a under division by b, up to content.  Only used inside the
/// PRS, which works modulo content anyway, so the integer content is stripped
/// every iteration to keep coefficients small.
fn u_pseudo_rem(a: &UPoly, b: &UPoly) -> UPoly {
    debug_assert!(!u_is_zero(b));
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while !u_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r <- lb*r - lr * x^{dr-db} * b
        let mut next = u_scale(&r, &lb);
        for (j, c) in b.iter().enumerate() {
            next[dr - db + j] -= &lr * c;
        }
        u_trim(&mut next);
        debug_assert!(next.len() < dr + 1);
        let g = u_content(&next);
        if !g.is_zero() && !g.is_one() {
            next = next.iter().map(|c| c / &g).collect();
        }
        r = next;
    }
    r
}

pub(crate) fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if u_is_zero(a) {
        return u_sign_norm(b);
    }
    if u_is_zero(b) {
        return u_sign_norm(a);
    }
    let c = u_content(a).gcd(&u_content(b));
    let mut x = u_primitive(a);
    let mut y = u_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !u_is_zero(&y) {
        let r = u_pseudo_rem(&x, &y);
        x = y;
        y = u_primitive(&r);
    }
    u_scale(&x, &c)
}

pub(crate) fn try_u_div(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if u_is_zero(b) {
        return None;
    }
    if u_is_zero(a) {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while !u_is_zero(&r) {
        let dr = r.len() - 1;
        if dr < db {
            return None;
        }
        let (qc, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, c) in b.iter().enumerate() {
            r[dr - db + j] -= &qc * c;
        }
        u_trim(&mut r);
        q[dr - db] = qc;
    }
    Some(q)
}

/// Exact division; panics when the division is not exact.
pub(crate) fn u_div_exact(a: &UPoly, b: &UPoly) -> UPoly {
    try_u_div(a, b).expect("non-exact univariate division")
}

// ---- bivariate layer: ℤ[t][q] ----

pub(crate) fn b_trim(p: &mut BPoly) {
    while p.last().map(u_is_zero).unwrap_or(false) {
        p.pop();
    }
}

pub(crate) fn b_is_zero(p: &BPoly) -> bool {
    p.is_empty()
}

pub(crate) fn b_is_one(p: &BPoly) -> bool {
    p.len() == 1 && u_is_one(&p[0])
}

pub(crate) fn b_add(a: &BPoly, b: &BPoly) -> BPoly {
    let mut out = vec![Vec::new(); a.len().max(b.len())];
    for (i, row) in a.iter().enumerate() {
        out[i] = row.clone();
    }
    for (i, row) in b.iter().enumerate() {
        out[i] = u_add(&out[i], row);
    }
    b_trim(&mut out);
    out
}

pub(crate) fn b_mul(a: &BPoly, b: &BPoly) -> BPoly {
    if b_is_zero(a) || b_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Vec::new(); a.len() + b.len() - 1];
    for (i, ra) in a.iter().enumerate() {
        if u_is_zero(ra) {
            continue;
        }
        for (j, rb) in b.iter().enumerate() {
            if !u_is_zero(rb) {
                out[i + j] = u_add(&out[i + j], &u_mul(ra, rb));
            }
        }
    }
    b_trim(&mut out);
    out
}

fn b_scale_u(p: &BPoly, c: &UPoly) -> BPoly {
    let mut out: BPoly = p.iter().map(|row| u_mul(row, c)).collect();
    b_trim(&mut out);
    out
}

/// Content as a polynomial in t (gcd of the q-coefficients), positive leading.
pub(crate) fn b_content(p: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for row in p {
        if !u_is_zero(row) {
            g = u_gcd(&g, row);
            if u_is_one(&g) {
                break;
            }
        }
    }
    g
}

/// Strip the t-content; the result's leading q-coefficient has a positive
/// leading t-coefficient.
pub(crate) fn b_primitive(p: &BPoly) -> BPoly {
    if b_is_zero(p) {
        return Vec::new();
    }
    let mut c = b_content(p);
    if p.last().unwrap().last().unwrap().is_negative() {
        c = u_neg(&c);
    }
    p.iter().map(|row| u_div_exact(row, &c)).collect()
}

fn b_sign_norm(p: &BPoly) -> BPoly {
    if b_is_zero(p) {
        return Vec::new();
    }
    if p.last().unwrap().last().unwrap().is_negative() {
        p.iter().map(|row| u_neg(row)).collect()
    } else {
        p.clone()
    }
}

fn b_cheap_content_strip(p: &mut BPoly) {
    if b_is_zero(p) {
        return;
    }
    let mut g = BigInt::zero();
    let mut tval = usize::MAX;
    for row in p.iter() {
        if u_is_zero(row) {
            continue;
        }
        tval = tval.min(row.iter().position(|c| !c.is_zero()).unwrap());
        if !g.is_one() {
            g = g.gcd(&u_content(row));
        }
    }
    for row in p.iter_mut() {
        if u_is_zero(row) {
            continue;
        }
        if tval > 0 {
            row.drain(..tval);
        }
        if !g.is_one() {
            for c in row.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
}

/// Like `u_pseudo_rem`, one level up: remainder of a by b in q, up to content
/// in ℤ[t].  Integer content and pure t-powers are cheap to detect, so both
/// are stripped every iteration; the full ℤ[t]-content comes off afterwards
/// in `b_primitive`.
fn b_pseudo_rem(a: &BPoly, b: &BPoly) -> BPoly {
    debug_assert!(!b_is_zero(b));
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while !b_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        let mut next: BPoly = r.iter().map(|row| u_mul(row, &lb)).collect();
        for (j, row) in b.iter().enumerate() {
            next[dr - db + j] = u_sub(&next[dr - db + j], &u_mul(row, &lr));
        }
        b_trim(&mut next);
        debug_assert!(next.len() < dr + 1);
        b_cheap_content_strip(&mut next);
        r = next;
    }
    r
}

/// Primitive PRS gcd of t-primitive polynomials, used as the fallback engine.
fn b_gcd_prs_primitive(fp: &BPoly, gp: &BPoly) -> BPoly {
    let mut x = fp.clone();
    let mut y = gp.clone();
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    x = b_sign_norm(&x);
    y = b_sign_norm(&y);
    while !b_is_zero(&y) {
        let r = b_pseudo_rem(&x, &y);
        x = y;
        y = b_primitive(&r);
    }
    x
}

pub(crate) fn try_b_div(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    if b_is_zero(b) {
        return None;
    }
    if b_is_zero(a) {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![Vec::new(); a.len().saturating_sub(db)];
    while !b_is_zero(&r) {
        let dr = r.len() - 1;
        if dr < db {
            return None;
        }
        let qc = try_u_div(r.last().unwrap(), lb)?;
        for (j, row) in b.iter().enumerate() {
            r[dr - db + j] = u_sub(&r[dr - db + j], &u_mul(row, &qc));
        }
        b_trim(&mut r);
        q[dr - db] = qc;
    }
    Some(q)
}

/// Exact division in ℤ[t][q]; panics when not exact.
pub(crate) fn b_div_exact(a: &BPoly, b: &BPoly) -> BPoly {
    try_b_div(a, b).expect("non-exact bivariate division")
}

fn b_content_and_primitive(p: &BPoly) -> (UPoly, BPoly) {
    let mut c = b_content(p);
    if p.last().unwrap().last().unwrap().is_negative() {
        c = u_neg(&c);
    }
    let prim = p.iter().map(|row| u_div_exact(row, &c)).collect();
    (u_sign_norm(&c), prim)
}

fn b_valuation_q(p: &BPoly) -> usize {
    p.iter().position(|row| !u_is_zero(row)).unwrap()
}

fn b_deg_t(p: &BPoly) -> usize {
    p.iter()
        .map(|row| row.len().saturating_sub(1))
        .max()
        .unwrap_or(0)
}

pub(crate) fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if b_is_zero(a) {
        return b_sign_norm(b);
    }
    if b_is_zero(b) {
        return b_sign_norm(a);
    }
    if a == b {
        return b_sign_norm(a);
    }
    let (cf, fp) = b_content_and_primitive(a);
    let (cg, gp) = b_content_and_primitive(b);
    let c = u_gcd(&cf, &cg);
    let prim = b_gcd_primitive(&fp, &gp);
    b_sign_norm(&b_scale_u(&prim, &c))
}

/// Gcd of t-primitive inputs (primitive w.r.t. ℤ[t]-content).
fn b_gcd_primitive(fp: &BPoly, gp: &BPoly) -> BPoly {
    if b_is_one(fp) || b_is_one(gp) {
        return vec![vec![BigInt::one()]];
    }
    // pure q-power fast path: a t-primitive monomial is q^a
    let mono = |p: &BPoly| {
        p.iter().filter(|r| !u_is_zero(r)).count() == 1 && u_is_one(&u_sign_norm(p.last().unwrap()))
    };
    if mono(fp) || mono(gp) {
        let v = b_valuation_q(fp).min(b_valuation_q(gp));
        let mut out = vec![Vec::new(); v + 1];
        out[v] = vec![BigInt::one()];
        // q^v divides the other argument only down to its own valuation
        return out;
    }
    let (fp, gp) = if fp.len() >= gp.len() {
        (fp, gp)
    } else {
        (gp, fp)
    };
    let gamma = u_gcd(fp.last().unwrap(), gp.last().unwrap());
    match brown_gcd(fp, gp, &gamma) {
        Some(h) => h,
        None => b_gcd_prs_primitive(fp, gp),
    }
}

// ---- Brown's modular gcd ----

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static Vec<u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < 50 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn big_mod(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn u_mod(row: &UPoly, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = row.iter().map(|c| big_mod(c, p)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn b_mod(f: &BPoly, p: u64) -> Vec<Vec<u64>> {
    f.iter().map(|row| u_mod(row, p)).collect()
}

fn zp_eval(row: &[u64], e: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for c in row.iter().rev() {
        acc = (mul_mod(acc, e, p) + c) % p;
    }
    acc
}

fn zp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn zp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let linv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = mul_mod(r[dr], linv, p);
        if factor != 0 {
            for (j, &c) in b.iter().enumerate() {
                let sub = mul_mod(factor, c, p);
                let idx = dr - db + j;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        zp_trim(&mut r);
    }
    r
}

fn zp_gcd_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    zp_trim(&mut x);
    zp_trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = zp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    let linv = inv_mod(*x.last().unwrap(), p);
    for c in &mut x {
        *c = mul_mod(*c, linv, p);
    }
    x
}

/// Newton interpolation over Z_p: the polynomial through (x_i, y_i).
fn zp_interp(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            dd[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    // expand sum dd[i] * prod_{l<i} (x - x_l)
    let mut poly = vec![0u64; 1];
    let mut basis = vec![1u64];
    for (i, &c) in dd.iter().enumerate() {
        if poly.len() < basis.len() {
            poly.resize(basis.len(), 0);
        }
        for (k, &bc) in basis.iter().enumerate() {
            poly[k] = (poly[k] + mul_mod(c, bc, p)) % p;
        }
        if i + 1 < n {
            // basis *= (x - x_i)
            let mut nb = vec![0u64; basis.len() + 1];
            let neg = (p - xs[i] % p) % p;
            for (k, &bc) in basis.iter().enumerate() {
                nb[k + 1] = (nb[k + 1] + bc) % p;
                nb[k] = (nb[k] + mul_mod(bc, neg, p)) % p;
            }
            basis = nb;
        }
    }
    zp_trim(&mut poly);
    poly
}

struct CrtAcc {
    modulus: BigInt,
    /// rows indexed by q-degree, entries in [0, modulus)
    rows: Vec<Vec<BigInt>>,
}

impl CrtAcc {
    fn new(img: &[Vec<u64>], p: u64) -> Self {
        CrtAcc {
            modulus: BigInt::from(p),
            rows: img
                .iter()
                .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        }
    }

    fn add_prime(&mut self, img: &[Vec<u64>], p: u64) {
        let m = self.modulus.clone();
        let minv = BigInt::from(inv_mod(big_mod(&m, p), p));
        let bp = BigInt::from(p);
        let rows = self.rows.len().max(img.len());
        self.rows.resize(rows, Vec::new());
        for i in 0..rows {
            let new_row = img.get(i).cloned().unwrap_or_default();
            let cols = self.rows[i].len().max(new_row.len());
            self.rows[i].resize(cols, BigInt::zero());
            for j in 0..cols {
                let a = &self.rows[i][j];
                let b = BigInt::from(*new_row.get(j).unwrap_or(&0));
                let delta = ((b - a) * &minv).mod_floor(&bp);
                self.rows[i][j] = a + &m * delta;
            }
        }
        self.modulus = m * bp;
    }

    /// Symmetric (balanced) lift to ℤ[t][q].
    fn lift(&self) -> BPoly {
        let half = &self.modulus / 2;
        let mut out: BPoly = self
            .rows
            .iter()
            .map(|row| {
                let mut r: UPoly = row
                    .iter()
                    .map(|c| {
                        if c > &half {
                            c - &self.modulus
                        } else {
                            c.clone()
                        }
                    })
                    .collect();
                u_trim(&mut r);
                r
            })
            .collect();
        b_trim(&mut out);
        out
    }
}

/// One modular image: the gcd of fp, gp mod p scaled to leading coefficient
/// γ mod p, interpolated from enough evaluation points, plus its q-degree.
/// Returns None when p is unusable, Some(Err(())) when the primitive parts
/// are provably coprime, Some(Ok(img)) otherwise.
fn brown_image(
    fp: &BPoly,
    gp: &BPoly,
    gamma: &UPoly,
    p: u64,
) -> Option<std::result::Result<Vec<Vec<u64>>, ()>> {
    let fm = b_mod(fp, p);
    let gm = b_mod(gp, p);
    // the prime must preserve q-degrees and γ
    if fm.last().map(|r| r.is_empty()).unwrap_or(true)
        || fm.len() != fp.len()
        || gm.last().map(|r| r.is_empty()).unwrap_or(true)
        || gm.len() != gp.len()
    {
        return None;
    }
    let gamma_m = u_mod(gamma, p);
    if gamma_m.is_empty() {
        return None;
    }
    let pts_needed = b_deg_t(gp).min(b_deg_t(fp)) + gamma.len();
    let mut xs: Vec<u64> = Vec::new();
    let mut imgs: Vec<Vec<u64>> = Vec::new();
    let mut dmin = usize::MAX;
    let mut e = 0u64;
    while xs.len() < pts_needed {
        if e >= p {
            return None; // prime too small to supply points (never for 31-bit)
        }
        let pt = e;
        e += 1;
        // a good point keeps both leading coefficients and γ nonzero, so the
        // image gcd degree can only overshoot, never undershoot
        if zp_eval(fm.last().unwrap(), pt, p) == 0 || zp_eval(gm.last().unwrap(), pt, p) == 0 {
            continue;
        }
        let ge = zp_eval(&gamma_m, pt, p);
        if ge == 0 {
            continue;
        }
        let fe: Vec<u64> = fm.iter().map(|row| zp_eval(row, pt, p)).collect();
        let gev: Vec<u64> = gm.iter().map(|row| zp_eval(row, pt, p)).collect();
        let u = zp_gcd_monic(&fe, &gev, p);
        let du = u.len() - 1;
        if du == 0 {
            return Some(Err(())); // certified coprime
        }
        if du < dmin {
            dmin = du;
            xs.clear();
            imgs.clear();
        } else if du > dmin {
            continue; // unlucky point
        }
        xs.push(pt);
        imgs.push(u.iter().map(|&c| mul_mod(c, ge, p)).collect());
    }
    // interpolate each q-coefficient over the points
    let mut out: Vec<Vec<u64>> = Vec::with_capacity(dmin + 1);
    for j in 0..=dmin {
        let ys: Vec<u64> = imgs.iter().map(|img| img[j]).collect();
        out.push(zp_interp(&xs, &ys, p));
    }
    Some(Ok(out))
}

fn brown_gcd(fp: &BPoly, gp: &BPoly, gamma: &UPoly) -> Option<BPoly> {
    let mut acc: Option<CrtAcc> = None;
    let mut acc_deg = usize::MAX;
    for &p in primes() {
        match brown_image(fp, gp, gamma, p) {
            None => continue,
            Some(Err(())) => return Some(vec![vec![BigInt::one()]]),
            Some(Ok(img)) => {
                let d = img.len() - 1;
                if d < acc_deg {
                    acc = Some(CrtAcc::new(&img, p));
                    acc_deg = d;
                } else if d == acc_deg {
                    acc.as_mut().unwrap().add_prime(&img, p);
                } else {
                    continue; // unlucky prime
                }
                let lifted = acc.as_ref().unwrap().lift();
                if lifted.len() != acc_deg + 1 {
                    continue; // leading row collapsed; need more primes
                }
                let h = b_primitive(&lifted);
                if try_b_div(fp, &h).is_some() && try_b_div(gp, &h).is_some() {
                    // h divides both t-primitive inputs and has the image
                    // degree, which bounds the true gcd degree from above;
                    // both force h = ±gcd
                    return Some(b_sign_norm(&h));
                }
            }
        }
    }
    None
}
