//! Exact low-dimensional linear programming by randomized incremental
//! construction (Seidel), fraction-free.
//!
//! Problems have the form: lexicographically maximize `(o_1 . y, o_2 . y, ...)`
//! over `y` in an integer box, subject to integer rows `g . y <= r`. Using a
//! lexicographic objective whose vectors span the space makes the optimum
//! unique, which is what the incremental algorithm needs: if the current
//! optimum satisfies the next row it stays optimal, otherwise the new optimum
//! lies on that row's hyperplane and a problem with one variable fewer is
//! solved there.
//!
//! Eliminating a variable multiplies rows by the absolute pivot, so every
//! row stays integral. The current vertex is kept as an integer vector over a
//! common positive denominator. Arithmetic first runs on checked `i128`; on
//! overflow the whole solve is repeated with big integers.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rng::SplitMix64;

pub(crate) trait Int: Clone + Ord + Debug {
    fn from_i128(v: i128) -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn abs(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    /// Exact division by a divisor.
    fn div_exact(&self, o: &Self) -> Self;
    /// Whether the magnitude is large enough to be worth a gcd reduction.
    fn is_large(&self) -> bool;
}

impl Int for i128 {
    fn from_i128(v: i128) -> Self {
        v
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_large(&self) -> bool {
        self.unsigned_abs() > 1 << 40
    }
}

impl Int for BigInt {
    fn from_i128(v: i128) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_large(&self) -> bool {
        self.bits() > 40
    }
}

/// Source of constraint rows `g . y <= r`. Rows may be generated on demand.
pub(crate) trait Rows<T> {
    fn len(&self) -> usize;
    /// Writes `g` into `out` and returns `r`.
    fn row(&self, idx: usize, out: &mut [T]) -> T;
}

/// Rows with `i128` coefficients produced by a closure.
pub(crate) struct IntRows<F> {
    pub count: usize,
    pub width: usize,
    pub fill: F,
}

impl<T: Int, F: Fn(usize, &mut [i128]) -> i128> Rows<T> for IntRows<F> {
    fn len(&self) -> usize {
        self.count
    }
    fn row(&self, idx: usize, out: &mut [T]) -> T {
        let mut buf = [0i128; 16];
        let mut heap;
        let ints: &mut [i128] = if self.width <= buf.len() {
            &mut buf[..self.width]
        } else {
            heap = vec![0i128; self.width];
            &mut heap
        };
        let rhs = (self.fill)(idx, ints);
        for (o, v) in out.iter_mut().zip(ints.iter()) {
            *o = T::from_i128(*v);
        }
        T::from_i128(rhs)
    }
}

/// Rows stored flat, `width` coefficients each.
struct Table<T> {
    width: usize,
    coeffs: Vec<T>,
    rhs: Vec<T>,
}

impl<T: Int> Table<T> {
    fn with_capacity(width: usize, rows: usize) -> Self {
        Self { width, coeffs: Vec::with_capacity(width * rows), rhs: Vec::with_capacity(rows) }
    }

    /// Appends a row, dropping trivially satisfied all-zero rows. Returns
    /// `Some(false)` for an all-zero row with negative right-hand side, which
    /// makes the problem infeasible.
    fn push(&mut self, mut coeffs: Vec<T>, mut rhs: T) -> Option<bool> {
        if coeffs.iter().all(Int::is_zero) {
            return Some(!rhs.is_negative());
        }
        if rhs.is_large() || coeffs.iter().any(Int::is_large) {
            let g = coeffs.iter().fold(rhs.abs()?, |g, c| g.gcd(c));
            if !g.is_zero() {
                coeffs.iter_mut().for_each(|c| *c = c.div_exact(&g));
                rhs = rhs.div_exact(&g);
            }
        }
        self.coeffs.extend(coeffs);
        self.rhs.push(rhs);
        Some(true)
    }
}

impl<T: Int> Rows<T> for Table<T> {
    fn len(&self) -> usize {
        self.rhs.len()
    }
    fn row(&self, idx: usize, out: &mut [T]) -> T {
        out.clone_from_slice(&self.coeffs[idx * self.width..(idx + 1) * self.width]);
        self.rhs[idx].clone()
    }
}

/// A rational point `num / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vertex<T> {
    pub num: Vec<T>,
    pub den: T,
}

impl<T: Int> Vertex<T> {
    fn integral(num: Vec<T>) -> Self {
        Self { num, den: T::from_i128(1) }
    }

    /// `g . y <= r`.
    fn satisfies(&self, g: &[T], r: &T) -> Option<bool> {
        let mut lhs = T::zero();
        for (a, b) in g.iter().zip(&self.num) {
            if !a.is_zero() {
                lhs = lhs.add(&a.mul(b)?)?;
            }
        }
        Some(lhs <= r.mul(&self.den)?)
    }

    fn reduce(&mut self) {
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_zero() && g != T::from_i128(1) {
            self.num.iter_mut().for_each(|c| *c = c.div_exact(&g));
            self.den = self.den.div_exact(&g);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome<T> {
    Optimal(Vertex<T>),
    /// The caller's stop predicate accepted an intermediate optimum.
    Stopped(Vertex<T>),
    Infeasible,
}

/// Whether the variable should sit at its upper bound: decided by the first
/// objective with a nonzero coefficient on it.
fn pushes_up<T: Int>(objectives: &[Vec<T>], i: usize) -> bool {
    objectives.iter().map(|o| &o[i]).find(|c| !c.is_zero()).is_some_and(Int::is_positive)
}

/// `a/b < c/d` for positive `b`, `d`.
fn frac_lt<T: Int>(a: &T, b: &T, c: &T, d: &T) -> Option<bool> {
    Some(a.mul(d)? < c.mul(b)?)
}

fn solve_1d<T: Int, R: Rows<T>>(rows: &R, objectives: &[Vec<T>], lo: &T, hi: &T) -> Option<Outcome<T>> {
    let one = T::from_i128(1);
    let (mut lower, mut lower_den) = (lo.clone(), one.clone());
    let (mut upper, mut upper_den) = (hi.clone(), one);
    let mut g = vec![T::zero()];
    for idx in 0..rows.len() {
        let r = rows.row(idx, &mut g);
        if g[0].is_zero() {
            if r.is_negative() {
                return Some(Outcome::Infeasible);
            }
        } else if g[0].is_positive() {
            // y <= r / g
            if frac_lt(&r, &g[0], &upper, &upper_den)? {
                (upper, upper_den) = (r, g[0].clone());
            }
        } else {
            // y >= r / g = (-r) / (-g)
            let (n, d) = (r.neg()?, g[0].neg()?);
            if frac_lt(&lower, &lower_den, &n, &d)? {
                (lower, lower_den) = (n, d);
            }
        }
    }
    if frac_lt(&upper, &upper_den, &lower, &lower_den)? {
        return Some(Outcome::Infeasible);
    }
    let (num, den) = if pushes_up(objectives, 0) { (upper, upper_den) } else { (lower, lower_den) };
    let mut v = Vertex { num: vec![num], den };
    v.reduce();
    Some(Outcome::Optimal(v))
}

/// Solves the problem; `None` signals arithmetic overflow in `T`.
#[cfg(test)]
pub(crate) fn solve<T: Int, R: Rows<T>>(
    rows: &R,
    objectives: &[Vec<T>],
    lo: &[T],
    hi: &[T],
    rng: &mut SplitMix64,
    stop: &mut dyn FnMut(&Vertex<T>) -> bool,
) -> Option<Outcome<T>> {
    solve_with_hint(rows, objectives, lo, hi, rng, stop, &mut Vec::new())
}

/// Solves the problem with the rows listed in `hint` inserted first. Any
/// order gives the same answer; a good one avoids recomputation. On return
/// `hint` holds the rows that moved the optimum, latest last, as a hint for
/// a similar problem. `None` signals arithmetic overflow in `T`.
pub(crate) fn solve_with_hint<T: Int, R: Rows<T>>(
    rows: &R,
    objectives: &[Vec<T>],
    lo: &[T],
    hi: &[T],
    rng: &mut SplitMix64,
    stop: &mut dyn FnMut(&Vertex<T>) -> bool,
    hint: &mut Vec<usize>,
) -> Option<Outcome<T>> {
    let k = lo.len();
    if k == 1 {
        return match solve_1d(rows, objectives, &lo[0], &hi[0])? {
            Outcome::Optimal(y) if stop(&y) => Some(Outcome::Stopped(y)),
            other => Some(other),
        };
    }

    let mut order: Vec<usize> = (0..rows.len()).collect();
    rng.shuffle(&mut order);
    let mut front = 0;
    for &idx in hint.iter() {
        if let Some(p) = order[front..].iter().position(|&o| o == idx) {
            order.swap(front, front + p);
            front += 1;
        }
    }
    hint.clear();

    let mut y = Vertex::integral(
        (0..k).map(|i| if pushes_up(objectives, i) { hi[i].clone() } else { lo[i].clone() }).collect(),
    );
    if stop(&y) {
        return Some(Outcome::Stopped(y));
    }
    let mut g = vec![T::zero(); k];
    let mut h = vec![T::zero(); k];
    for (pos, &idx) in order.iter().enumerate() {
        let r = rows.row(idx, &mut g);
        if y.satisfies(&g, &r)? {
            continue;
        }
        hint.push(idx);
        let Some(j) = g.iter().position(|c| !c.is_zero()) else {
            // 0 <= r failed.
            return Some(Outcome::Infeasible);
        };

        // On the hyperplane, |s| y_j = sigma (r - sum_{m != j} g_m y_m) with
        // s = g_j and sigma its sign. Substituting into a row h and scaling
        // by |s| > 0 keeps everything integral.
        let s = g[j].clone();
        let flip = s.is_negative();
        let abs_s = s.abs()?;
        let signed = |v: &T| if flip { v.neg() } else { Some(v.clone()) };
        let sigma_r = signed(&r)?;
        let sigma_g: Vec<T> = g.iter().map(&signed).collect::<Option<_>>()?;

        let mut sub = Table::with_capacity(k - 1, pos + 2);
        let mut feasible = true;
        for &prev in &order[..pos] {
            let rh = rows.row(prev, &mut h);
            let hj = &h[j];
            let mut coeffs = Vec::with_capacity(k - 1);
            for m in (0..k).filter(|&m| m != j) {
                coeffs.push(h[m].mul(&abs_s)?.sub(&hj.mul(&sigma_g[m])?)?);
            }
            let rhs = rh.mul(&abs_s)?.sub(&hj.mul(&sigma_r)?)?;
            feasible &= sub.push(coeffs, rhs)?;
        }
        // Box bounds of the eliminated variable.
        let rest = || (0..k).filter(move |&m| m != j);
        let up: Vec<T> = rest().map(|m| sigma_g[m].neg()).collect::<Option<_>>()?;
        feasible &= sub.push(up, hi[j].mul(&abs_s)?.sub(&sigma_r)?)?;
        let down: Vec<T> = rest().map(|m| sigma_g[m].clone()).collect();
        feasible &= sub.push(down, sigma_r.sub(&lo[j].mul(&abs_s)?)?)?;
        if !feasible {
            return Some(Outcome::Infeasible);
        }

        let mut sub_objectives = Vec::with_capacity(objectives.len());
        for o in objectives {
            let projected: Vec<T> =
                rest().map(|m| o[m].mul(&abs_s)?.sub(&o[j].mul(&sigma_g[m])?)).collect::<Option<_>>()?;
            sub_objectives.push(projected);
        }
        let sub_lo: Vec<T> = rest().map(|m| lo[m].clone()).collect();
        let sub_hi: Vec<T> = rest().map(|m| hi[m].clone()).collect();

        let z = match solve_with_hint(&sub, &sub_objectives, &sub_lo, &sub_hi, rng, &mut |_| false, &mut Vec::new())? {
            Outcome::Optimal(z) | Outcome::Stopped(z) => z,
            Outcome::Infeasible => return Some(Outcome::Infeasible),
        };
        // y_j = sigma (r D - sum g_m Z_m) / (|s| D); the others scale by |s|.
        let mut acc = sigma_r.mul(&z.den)?;
        for (m, zm) in rest().zip(&z.num) {
            acc = acc.sub(&sigma_g[m].mul(zm)?)?;
        }
        let mut num: Vec<T> = z.num.iter().map(|v| v.mul(&abs_s)).collect::<Option<_>>()?;
        num.insert(j, acc);
        y = Vertex { num, den: z.den.mul(&abs_s)? };
        y.reduce();
        if stop(&y) {
            return Some(Outcome::Stopped(y));
        }
    }
    Some(Outcome::Optimal(y))
}

/// Decides whether the query point lies strictly outside the hull described
/// by `fill`.
///
/// Every row is a candidate point `p_i` given relative to the query point
/// (`p_i - x`, possibly scaled by a positive factor). The query is outside
/// iff some `a` with `a . (p_i - x) < 0` for all `i` exists, i.e. iff
///
/// ```text
/// maximize t  s.t.  a . (p_i - x) + t <= 0,  -1 <= a_k <= 1,  -1 <= t <= 1
/// ```
///
/// has a positive optimum. The solve stops as soon as an intermediate
/// optimum has `t <= 0`, since further rows can only lower it. `hint` carries
/// the deciding rows between similar queries; see [`solve_with_hint`].
pub(crate) fn separated_with_hint<F>(dim: usize, count: usize, seed: u64, fill: F, hint: &mut Vec<usize>) -> bool
where
    F: Fn(usize, &mut [i128]),
{
    let rows = IntRows {
        count,
        width: dim + 1,
        fill: |idx: usize, out: &mut [i128]| {
            fill(idx, &mut out[..dim]);
            out[dim] = 1;
            0
        },
    };
    let mut attempt = hint.clone();
    if let Some(outside) = separated_in::<i128, _>(dim, &rows, seed, &mut attempt) {
        *hint = attempt;
        return outside;
    }
    separated_in::<BigInt, _>(dim, &rows, seed, hint).expect("big integers cannot overflow")
}

#[cfg(test)]
pub(crate) fn separated<F>(dim: usize, count: usize, seed: u64, fill: F) -> bool
where
    F: Fn(usize, &mut [i128]),
{
    separated_with_hint(dim, count, seed, fill, &mut Vec::new())
}

fn separated_in<T: Int, R: Rows<T>>(dim: usize, rows: &R, seed: u64, hint: &mut Vec<usize>) -> Option<bool> {
    let k = dim + 1;
    let unit = |i: usize| (0..k).map(|m| T::from_i128((m == i) as i128)).collect::<Vec<T>>();
    let objectives: Vec<Vec<T>> = std::iter::once(unit(dim)).chain((0..dim).map(unit)).collect();
    let lo = vec![T::from_i128(-1); k];
    let hi = vec![T::from_i128(1); k];
    let mut rng = SplitMix64::new(seed);
    let mut stop = |y: &Vertex<T>| !y.num[dim].is_positive();
    Some(match solve_with_hint(rows, &objectives, &lo, &hi, &mut rng, &mut stop, hint)? {
        Outcome::Optimal(y) => y.num[dim].is_positive(),
        Outcome::Stopped(_) => false,
        Outcome::Infeasible => unreachable!("a = 0, t = 0 is always feasible"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[(&[i128], i128)]) -> Table<i128> {
        let mut t = Table::with_capacity(rows[0].0.len(), rows.len());
        for (g, r) in rows {
            assert!(t.push(g.to_vec(), *r).unwrap());
        }
        t
    }

    fn vertex(num: &[i128], den: i128) -> Vertex<i128> {
        Vertex { num: num.to_vec(), den }
    }

    #[test]
    fn two_variable_optimum() {
        // maximize x + y  s.t. x + 2y <= 4, 3x + y <= 6, box [-10, 10]^2.
        let rows = table(&[(&[1, 2], 4), (&[3, 1], 6)]);
        let objectives = vec![vec![1, 1], vec![1, 0], vec![0, 1]];
        for seed in 0..20 {
            let mut rng = SplitMix64::new(seed);
            let out = solve(&rows, &objectives, &[-10, -10], &[10, 10], &mut rng, &mut |_| false);
            assert_eq!(out, Some(Outcome::Optimal(vertex(&[8, 6], 5))));
        }
    }

    #[test]
    fn lexicographic_tie_break() {
        // maximize y with x + y <= 1 and y <= 1: optimum y = 1, then largest x = 0.
        let rows = table(&[(&[1, 1], 1), (&[0, 1], 1)]);
        let objectives = vec![vec![0, 1], vec![1, 0]];
        let mut rng = SplitMix64::new(3);
        let out = solve(&rows, &objectives, &[-5, -5], &[5, 5], &mut rng, &mut |_| false);
        assert_eq!(out, Some(Outcome::Optimal(vertex(&[0, 1], 1))));
    }

    #[test]
    fn three_variable_optimum_with_fractions() {
        // maximize x + y + z  s.t. 2x + y + z <= 3, x + 3y + z <= 2, x + y + 5z <= 4.
        let rows = table(&[(&[2, 1, 1], 3), (&[1, 3, 1], 2), (&[1, 1, 5], 4)]);
        let objectives = vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let mut seen = None;
        for seed in 0..20 {
            let mut rng = SplitMix64::new(seed);
            let out = solve(&rows, &objectives, &[-9, -9, -9], &[9, 9, 9], &mut rng, &mut |_| false);
            let Some(Outcome::Optimal(v)) = out else { panic!("{out:?}") };
            // All three rows are tight at (13/11, 1/11, 6/11); duals (4, 2, 1)/11.
            assert_eq!(v, vertex(&[13, 1, 6], 11));
            assert!(seen.is_none_or(|s| s == v));
            seen = Some(v);
        }
    }

    #[test]
    fn detects_infeasibility() {
        let rows = table(&[(&[1, 0], -1), (&[-1, 0], -1)]);
        let objectives = vec![vec![1, 0], vec![0, 1]];
        let mut rng = SplitMix64::new(1);
        let out = solve(&rows, &objectives, &[-5, -5], &[5, 5], &mut rng, &mut |_| false);
        assert_eq!(out, Some(Outcome::Infeasible));
    }

    #[test]
    fn separation_of_square_center_and_outside_point() {
        let square = [[0i128, 0], [2, 0], [0, 2], [2, 2]];
        let test = |x: [i128; 2]| {
            separated(2, square.len(), 11, |i, out| {
                out[0] = square[i][0] - x[0];
                out[1] = square[i][1] - x[1];
            })
        };
        assert!(!test([1, 1]));
        assert!(!test([2, 1]));
        assert!(!test([0, 0]));
        assert!(test([3, 1]));
        assert!(test([-1, -1]));
    }

    #[test]
    fn hints_do_not_change_answers() {
        let pts = [[0i128, 0, 0], [4, 0, 1], [0, 5, 2], [1, 1, 6], [3, 3, 3]];
        let mut hint = Vec::new();
        for x in [[1i128, 1, 1], [9, 9, 9], [1, 2, 2], [0, 0, 0], [4, 0, 2], [2, 2, 2]] {
            let fill = |i: usize, out: &mut [i128]| {
                for k in 0..3 {
                    out[k] = pts[i][k] - x[k];
                }
            };
            let fresh = separated(3, pts.len(), 7, fill);
            assert_eq!(separated_with_hint(3, pts.len(), 7, fill, &mut hint), fresh, "{x:?}");
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 1i128 << 100;
        let pts = [[big, 1], [-big, 3], [7, big]];
        let test = |x: [i128; 2]| {
            separated(2, pts.len(), 5, |i, out| {
                out[0] = pts[i][0] - x[0];
                out[1] = pts[i][1] - x[1];
            })
        };
        assert!(!test([0, 2]));
        assert!(test([0, -big]));
    }
}
