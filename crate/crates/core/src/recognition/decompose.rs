use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::certificate::one_based;
use super::probe::{nondegenerate_probe, ProbeOutcome};
use super::{AbzCertificate, DetSet};
use crate::error::{Error, Result};
use crate::linalg::{abs_minor, adapted_hnf, is_unimodular, require_full_column_rank, snf_with_transforms, HnfProfile};
use crate::matrix::IntMatrix;
use crate::tu::test_tu;

/// The block layout
///
/// ```text
/// [ L 0 | 0/a ]
/// [ 0 R | 0/b ]
/// ```
///
/// obtained from `A` by a row permutation, row signs and a unimodular column
/// transform. Row `r` of the layout is `sign_flips[r] * (A·U)[row_perm[r]]`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub row_perm: Vec<usize>,
    pub sign_flips: Vec<i8>,
    pub col_transform: IntMatrix,
    pub m1: usize,
    pub n1: usize,
    pub m2: usize,
    pub n2: usize,
    pub l_block: IntMatrix,
    pub r_block: IntMatrix,
    pub last_col: Vec<BigInt>,
    /// Input rows with last-column entry a, b and 0 respectively.
    pub i_a: Vec<usize>,
    pub i_b: Vec<usize>,
    pub i_0: Vec<usize>,
    pub a: BigInt,
    pub b: BigInt,
}

impl Decomposition {
    /// The rearranged input matrix.
    pub fn layout(&self, a: &IntMatrix) -> Result<IntMatrix> {
        let au = a.mul(&self.col_transform)?;
        let mut out = au.select_rows(&self.row_perm);
        for (r, &s) in self.sign_flips.iter().enumerate() {
            if s < 0 {
                out.negate_row(r);
            }
        }
        Ok(out)
    }

    /// Checks every structural property against the input `a`.
    pub fn verify(&self, a: &IntMatrix) -> std::result::Result<(), String> {
        let (m, n) = (a.rows(), a.cols());
        let mut seen = vec![false; m];
        for &r in &self.row_perm {
            if r >= m || std::mem::replace(&mut seen[r], true) {
                return Err("row_perm is not a permutation".into());
            }
        }
        if self.row_perm.len() != m || self.sign_flips.len() != m {
            return Err("row_perm or sign_flips has the wrong length".into());
        }
        if self.col_transform.rows() != n || !is_unimodular(&self.col_transform) {
            return Err("col_transform is not unimodular".into());
        }
        if self.m1 + self.m2 != m || self.n1 + self.n2 + 1 != n {
            return Err("block sizes do not add up".into());
        }
        let lay = self.layout(a).map_err(|e| e.to_string())?;
        for i in 0..m {
            for j in 0..n - 1 {
                let top = i < self.m1;
                let left = j < self.n1;
                let expected = match (top, left) {
                    (true, true) => self.l_block.get(i, j).clone(),
                    (false, false) => self.r_block.get(i - self.m1, j - self.n1).clone(),
                    _ => BigInt::zero(),
                };
                if lay.get(i, j) != &expected {
                    return Err(format!("layout entry ({i},{j}) does not match the blocks"));
                }
            }
            let last = lay.get(i, n - 1);
            if last != &self.last_col[i] {
                return Err(format!("last column differs at row {i}"));
            }
            let side = if i < self.m1 { &self.a } else { &self.b };
            if !last.is_zero() && last != side {
                return Err(format!("last column entry {last} at row {i} not in {{0,{side}}}"));
            }
        }
        if !test_tu(&self.l_block).is_tu || !test_tu(&self.r_block).is_tu {
            return Err("a block is not totally unimodular".into());
        }
        for j in 0..n - 1 {
            let unit = (0..m).any(|i| (0..n - 1).all(|c| lay.get(i, c) == &BigInt::from(i64::from(c == j))));
            if !unit {
                return Err(format!("no unit row for column {j}"));
            }
        }
        let mut part: Vec<usize> = self.i_a.iter().chain(&self.i_b).chain(&self.i_0).copied().collect();
        part.sort_unstable();
        if part != (0..m).collect::<Vec<_>>() {
            return Err("index partition does not cover the rows".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows = |m: &IntMatrix| -> Vec<Vec<String>> {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                .collect()
        };
        json!({
            "row_perm": one_based(&self.row_perm),
            "sign_flips": self.sign_flips,
            "col_transform": rows(&self.col_transform),
            "split": {"m1": self.m1, "n1": self.n1, "m2": self.m2, "n2": self.n2},
            "L": rows(&self.l_block),
            "R": rows(&self.r_block),
            "last_col": self.last_col.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "I_a": one_based(&self.i_a),
            "I_b": one_based(&self.i_b),
            "I_0": one_based(&self.i_0),
        })
    }
}

#[derive(Clone, Debug)]
pub enum DecomposeOutcome {
    Decomposition(Decomposition),
    Certificate(AbzCertificate),
}

/// Normalizes `(a, b)` to `a >= b` and checks the preconditions of the
/// decomposition: `b > 0`, gcd(a, b) = 1 and (a, b) ≠ (2, 1).
pub(crate) fn ordered_pair(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    let (a, b) = if a >= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if !b.is_positive() {
        return Err(Error::Contract("a and b must be positive".into()));
    }
    if !a.gcd(&b).is_one() {
        return Err(Error::Contract(format!("gcd({a}, {b}) must be 1")));
    }
    if a == BigInt::from(2) && b.is_one() {
        return Err(Error::Contract("(a, b) = (2, 1) is not supported".into()));
    }
    Ok((a, b))
}

/// Brings an {a,b,0}-modular matrix into the two-block layout, or returns a
/// certificate that `A` is not {a,b,0}-modular.
///
/// Requires gcd(a, b) = 1 and (a, b) ≠ (2, 1); the pair is reordered so that
/// a >= b.
pub fn decompose_ab0(a: &IntMatrix, a_val: &BigInt, b_val: &BigInt) -> Result<DecomposeOutcome> {
    let (av, bv) = ordered_pair(a_val, b_val)?;
    require_full_column_rank(a)?;
    let det_gcd = snf_with_transforms(a)?.det_gcd();
    if !det_gcd.is_one() {
        return Ok(DecomposeOutcome::Certificate(AbzCertificate::GcdMismatch {
            det_gcd,
            expected: BigInt::one(),
        }));
    }
    Decomposer { a, av, bv }.run()
}

struct Decomposer<'a> {
    a: &'a IntMatrix,
    av: BigInt,
    bv: BigInt,
}

type Step<T> = std::result::Result<T, AbzCertificate>;

impl Decomposer<'_> {
    fn allowed(&self, v: &BigInt) -> bool {
        v.is_zero() || v == &self.av || v == &self.bv
    }

    /// The minor on `orig_rows` as a certificate; the caller has a proof
    /// that it lies outside {a, b, 0}.
    fn extra(&self, mut orig_rows: Vec<usize>) -> Result<AbzCertificate> {
        orig_rows.sort_unstable();
        if orig_rows.len() != self.a.cols() {
            return Err(Error::Internal("certificate rows do not form a square minor".into()));
        }
        let value = abs_minor(self.a, &orig_rows);
        if self.allowed(&value) {
            return Err(Error::Internal(format!("expected a minor outside {{a,b,0}}, got {value}")));
        }
        Ok(AbzCertificate::ExtraElement { value, rows: orig_rows })
    }

    fn run(&self) -> Result<DecomposeOutcome> {
        let n = self.a.cols();
        let mut profile = adapted_hnf(self.a, None)?;
        if profile.deltas.is_empty() && profile.corner.is_one() {
            let verdict = test_tu(&profile.permuted);
            match verdict.certificate {
                None => return self.totally_unimodular(&profile),
                Some(cert) => {
                    let rows = with_unit_rows(&cert.rows, &cert.cols, n);
                    let orig = profile.original_rows(&rows);
                    let v = abs_minor(self.a, &orig);
                    if !self.allowed(&v) {
                        return Ok(DecomposeOutcome::Certificate(self.extra(orig)?));
                    }
                    profile = adapted_hnf(self.a, Some(&orig))?;
                }
            }
        }
        match self.structured(profile)? {
            Ok(d) => Ok(DecomposeOutcome::Decomposition(d)),
            Err(c) => Ok(DecomposeOutcome::Certificate(c)),
        }
    }

    /// Every maximal minor is in {0, ±1}.
    fn totally_unimodular(&self, profile: &HnfProfile) -> Result<DecomposeOutcome> {
        let n = self.a.cols();
        let top = profile.original_rows(&(0..n).collect::<Vec<_>>());
        if self.av.is_one() {
            let m = self.a.rows();
            let w = &profile.permuted;
            let order: Vec<usize> = (0..m).collect();
            let cols: Vec<usize> = (0..n - 1).collect();
            return Ok(DecomposeOutcome::Decomposition(self.assemble(
                profile,
                w,
                &profile.col_transform,
                &order,
                m,
                &cols,
                n - 1,
            )));
        }
        if !self.bv.is_one() {
            return Ok(DecomposeOutcome::Certificate(self.extra(top)?));
        }
        let subset = match nondegenerate_probe(self.a, 3)? {
            ProbeOutcome::DetSet(d) => d,
            ProbeOutcome::DegeneracyWitness(rows) => {
                let mut d = DetSet::new();
                d.insert(BigInt::one(), top);
                d.insert(BigInt::zero(), rows);
                d
            }
            ProbeOutcome::AtLeast(_) => {
                return Err(Error::Internal("totally unimodular layout with four minors".into()))
            }
        };
        Ok(DecomposeOutcome::Certificate(AbzCertificate::StrictSubset(subset)))
    }

    fn structured(&self, profile: HnfProfile) -> Result<Step<Decomposition>> {
        let (m, n) = (self.a.rows(), self.a.cols());
        let orig = |rows: &[usize]| profile.original_rows(rows);
        let prod: BigInt = profile.deltas.iter().product::<BigInt>() * &profile.corner;
        if !self.allowed(&prod) {
            return Ok(Err(self.extra(profile.basis_rows.clone())?));
        }
        let mut w = profile.permuted.clone();
        let mut u = profile.col_transform.clone();
        let last = n - 1;
        let units: Vec<usize> = (0..last).collect();

        // a second nonzero value in the last column exists because gcd(D(A)) = 1
        let Some(k) = (n..m).find(|&k| {
            let v = w.get(k, last);
            !v.is_zero() && v != &profile.corner
        }) else {
            return Err(Error::Internal("last column divisible by the corner".into()));
        };
        let mut rows_k = units.clone();
        rows_k.push(k);
        let v2 = abs_minor(self.a, &orig(&rows_k));
        if !self.allowed(&v2) {
            return Ok(Err(self.extra(orig(&rows_k))?));
        }
        if profile.l > 0 {
            return Err(Error::Internal("two coprime minors sharing a factor".into()));
        }

        for k in last..m {
            if !self.allowed(w.get(k, last)) {
                let mut rows = units.clone();
                rows.push(k);
                return Ok(Err(self.extra(orig(&rows))?));
            }
        }
        let class = |w: &IntMatrix, i: usize| -> u8 {
            let v = w.get(i, last);
            if v == &self.av {
                b'a'
            } else if v == &self.bv {
                b'b'
            } else {
                b'0'
            }
        };
        let pick = |c: u8| -> usize {
            (0..m)
                .filter(|&i| class(&w, i) == c)
                .min_by_key(|&i| profile.original_row(i))
                .expect("both a and b occur in the last column")
        };
        let (p, q) = (pick(b'a'), pick(b'b'));

        // column normalization: every entry of the first n-1 columns in {0,±1}
        let theta_rows = |h: usize, i: usize, j: usize| -> Vec<usize> {
            let mut rows: Vec<usize> = units.iter().copied().filter(|&r| r != h).collect();
            rows.push(i);
            rows.push(j);
            rows
        };
        for h in 0..last {
            let Some(shift) = diophantine_shift(w.get(p, h), w.get(q, h), &self.av, &self.bv) else {
                return Ok(Err(self.extra(orig(&theta_rows(h, p, q)))?));
            };
            if !shift.is_zero() {
                let f = -shift;
                w.add_col_multiple(h, last, &f);
                u.add_col_multiple(h, last, &f);
            }
            for i in last..m {
                if w.get(i, h).abs() <= BigInt::one() {
                    continue;
                }
                let cert = [p, q]
                    .into_iter()
                    .filter(|&partner| partner != i)
                    .map(|partner| orig(&theta_rows(h, i, partner)))
                    .find(|rows| !self.allowed(&abs_minor(self.a, rows)));
                return match cert {
                    Some(rows) => Ok(Err(self.extra(rows)?)),
                    None => Err(Error::Internal("entry outside {0,±1} without a witness".into())),
                };
            }
        }

        // connected components of the nonzero pattern of the first n-1 columns
        let mut dsu = Dsu::new(m + last);
        for i in 0..m {
            for j in 0..last {
                if !w.get(i, j).is_zero() {
                    dsu.union(i, m + j);
                }
            }
        }
        let mut comps: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        let mut aside = Vec::new();
        for i in 0..m {
            if (0..last).all(|j| w.get(i, j).is_zero()) {
                aside.push(i);
            } else {
                comps.entry(dsu.find(i)).or_default().0.push(i);
            }
        }
        for j in 0..last {
            comps.entry(dsu.find(m + j)).or_default().1.push(j);
        }
        let mut comps: Vec<(Vec<usize>, Vec<usize>)> = comps.into_values().collect();
        for (rows, _) in comps.iter_mut() {
            rows.sort_by_key(|&i| profile.original_row(i));
        }
        comps.sort_by_key(|(rows, _)| rows.first().map(|&i| profile.original_row(i)));

        for (rows, _) in &comps {
            let has = |c: u8| rows.iter().any(|&i| class(&w, i) == c);
            if has(b'a') && has(b'b') {
                let path = shortest_mixed_path(&w, rows, last, |i| class(&w, i));
                let mut path_rows: Vec<usize> = path.iter().map(|&(i, _)| i).collect();
                let mut path_cols: Vec<usize> = path.iter().map(|&(_, j)| j).collect();
                path_rows.sort_unstable();
                path_rows.dedup();
                path_cols.sort_unstable();
                path_cols.dedup();
                let rows = with_unit_rows(&path_rows, &path_cols, last);
                return Ok(Err(self.extra(orig(&rows))?));
            }
        }

        let (a_side, b_side): (Vec<_>, Vec<_>) =
            comps.into_iter().partition(|(rows, _)| rows.iter().any(|&i| class(&w, i) == b'a'));
        let mut row_order: Vec<usize> = a_side.iter().flat_map(|(r, _)| r.iter().copied()).collect();
        let mut col_order: Vec<usize> = a_side.iter().flat_map(|(_, c)| c.iter().copied()).collect();
        aside.sort_by_key(|&i| profile.original_row(i));
        row_order.extend(aside.iter().copied().filter(|&i| class(&w, i) != b'b'));
        let m1 = row_order.len();
        let n1 = col_order.len();
        row_order.extend(b_side.iter().flat_map(|(r, _)| r.iter().copied()));
        row_order.extend(aside.iter().copied().filter(|&i| class(&w, i) == b'b'));
        col_order.extend(b_side.iter().flat_map(|(_, c)| c.iter().copied()));

        let layout = w.submatrix(&row_order, &col_order);
        let left_cols: Vec<usize> = (0..n1).collect();
        let right_cols: Vec<usize> = (n1..last).collect();
        let l_block = layout.submatrix(&(0..m1).collect::<Vec<_>>(), &left_cols);
        let r_block = layout.submatrix(&(m1..m).collect::<Vec<_>>(), &right_cols);

        // a 2×2-determinant violator in either block grows into a 2a or 2b minor
        for (block, row_off, col_off, partner_class) in
            [(&l_block, 0, 0, b'b'), (&r_block, m1, n1, b'a')]
        {
            if let Some(cert) = test_tu(block).certificate {
                let partner = (0..m)
                    .find(|&i| class(&w, i) == partner_class)
                    .expect("both a and b occur in the last column");
                let mut rows: Vec<usize> = cert.rows.iter().map(|&r| row_order[r + row_off]).collect();
                rows.push(partner);
                let cols: Vec<usize> = cert.cols.iter().map(|&c| col_order[c + col_off]).collect();
                let rows = with_unit_rows(&rows, &cols, last);
                return Ok(Err(self.extra(orig(&rows))?));
            }
        }

        col_order.push(last);
        let u = u.select_cols(&col_order);
        Ok(Ok(self.assemble(&profile, &w, &u, &row_order, m1, &col_order, n1)))
    }

    /// Builds the decomposition from the working matrix `w` (rows of the
    /// profile, columns of `u`). `col_order` lists the first n-1 columns
    /// of `w` in layout order; `u` must already be in that order.
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        &self,
        profile: &HnfProfile,
        w: &IntMatrix,
        u: &IntMatrix,
        row_order: &[usize],
        m1: usize,
        col_order: &[usize],
        n1: usize,
    ) -> Decomposition {
        let (m, n) = (w.rows(), w.cols());
        let mut cols = col_order[..n - 1].to_vec();
        cols.push(n - 1);
        let layout = w.submatrix(row_order, &cols);
        let row_perm: Vec<usize> = row_order.iter().map(|&r| profile.original_row(r)).collect();
        let sign_flips: Vec<i8> = row_order.iter().map(|&r| profile.sign_flips[r]).collect();
        let last_col = layout.column(n - 1);
        let (mut i_a, mut i_b, mut i_0) = (Vec::new(), Vec::new(), Vec::new());
        for (r, v) in last_col.iter().enumerate() {
            let target = if v.is_zero() {
                &mut i_0
            } else if r < m1 {
                &mut i_a
            } else {
                &mut i_b
            };
            target.push(row_perm[r]);
        }
        for s in [&mut i_a, &mut i_b, &mut i_0] {
            s.sort_unstable();
        }
        Decomposition {
            sign_flips,
            col_transform: u.clone(),
            m1,
            n1,
            m2: m - m1,
            n2: n - 1 - n1,
            l_block: layout.submatrix(&(0..m1).collect::<Vec<_>>(), &(0..n1).collect::<Vec<_>>()),
            r_block: layout.submatrix(&(m1..m).collect::<Vec<_>>(), &(n1..n - 1).collect::<Vec<_>>()),
            last_col,
            i_a,
            i_b,
            i_0,
            row_perm,
            a: self.av.clone(),
            b: self.bv.clone(),
        }
    }
}

/// The shift `k` with `(x, y) - k·(a, b)` in {(0, ±1), (±1, 0), (0, 0)},
/// trying the three solution families in order.
fn diophantine_shift(x: &BigInt, y: &BigInt, a: &BigInt, b: &BigInt) -> Option<BigInt> {
    let (kx, rx) = x.div_rem(a);
    let (ky, ry) = y.div_rem(b);
    if rx.is_zero() && (y - &kx * b).abs().is_one() {
        return Some(kx);
    }
    if ry.is_zero() && (x - &ky * a).abs().is_one() {
        return Some(ky);
    }
    if rx.is_zero() && ry.is_zero() && kx == ky {
        return Some(kx);
    }
    None
}

/// `rows` together with the unit rows `j < units` for every column `j` of
/// the first `units` columns not in `cols`. Unit row `j` is row `j`.
fn with_unit_rows(rows: &[usize], cols: &[usize], units: usize) -> Vec<usize> {
    let mut out = rows.to_vec();
    out.extend((0..units).filter(|j| !cols.contains(j)));
    out
}

/// Breadth-first search over the nonzero entries of `w` restricted to
/// `rows` and the first `width` columns, where two entries are adjacent when
/// they share a row or a column. Returns a shortest path from an entry in an
/// `a`-row to an entry in a `b`-row.
fn shortest_mixed_path(
    w: &IntMatrix,
    rows: &[usize],
    width: usize,
    class: impl Fn(usize) -> u8,
) -> Vec<(usize, usize)> {
    let mut sorted_rows = rows.to_vec();
    sorted_rows.sort_unstable();
    let in_rows = |i: usize| sorted_rows.binary_search(&i).is_ok();
    let nonzero = |i: usize, j: usize| !w.get(i, j).is_zero();

    let mut parent: HashMap<(usize, usize), Option<(usize, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for &i in &sorted_rows {
        if class(i) != b'a' {
            continue;
        }
        for j in (0..width).filter(|&j| nonzero(i, j)) {
            parent.insert((i, j), None);
            queue.push_back((i, j));
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        if class(i) == b'b' {
            let mut path = vec![(i, j)];
            let mut cur = (i, j);
            while let Some(Some(prev)) = parent.get(&cur) {
                path.push(*prev);
                cur = *prev;
            }
            path.reverse();
            return path;
        }
        let row_moves = (0..width).filter(|&c| c != j && nonzero(i, c)).map(|c| (i, c));
        let col_moves = sorted_rows
            .iter()
            .copied()
            .filter(|&r| r != i && in_rows(r) && nonzero(r, j))
            .map(|r| (r, j));
        for next in row_moves.chain(col_moves).collect::<Vec<_>>() {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((i, j)));
                queue.push_back(next);
            }
        }
    }
    unreachable!("the component contains both an a-row and a b-row")
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx.max(ry)] = rx.min(ry);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::det_set_bruteforce;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn decompose(a: &IntMatrix, x: i64, y: i64) -> DecomposeOutcome {
        decompose_ab0(a, &big(x), &big(y)).unwrap()
    }

    #[test]
    fn preconditions() {
        let a = IntMatrix::identity(2);
        for (x, y) in [(2, 1), (4, 2), (3, 0)] {
            assert!(matches!(
                decompose_ab0(&a, &big(x), &big(y)),
                Err(Error::Contract(_))
            ));
        }
    }

    #[test]
    fn five_by_three_example() {
        let a = IntMatrix::from_rows(&[[1, 0, 0], [0, 1, 0], [0, 0, 3], [0, 0, 1], [1, 0, 3]]);
        let oracle = det_set_bruteforce(&a, 1000).unwrap();
        match decompose(&a, 3, 1) {
            DecomposeOutcome::Decomposition(d) => {
                d.verify(&a).unwrap();
                let lay = d.layout(&a).unwrap();
                assert_eq!(det_set_bruteforce(&lay, 1000).unwrap().value_set(), oracle.value_set());
                assert_eq!(oracle.value_set(), [0, 1, 3].map(big).into());
            }
            DecomposeOutcome::Certificate(c) => {
                assert!(c.verify(&a, &big(3), &big(1)));
                assert_ne!(oracle.value_set(), [0, 1, 3].map(big).into());
            }
        }
    }

    #[test]
    fn fixed_point_layout() {
        // L = [1], R = [1], last column (3, 0, 1, 0)
        let a = IntMatrix::from_rows(&[[1, 0, 3], [1, 0, 0], [0, 1, 1], [0, 1, 0]]);
        match decompose(&a, 3, 1) {
            DecomposeOutcome::Decomposition(d) => {
                d.verify(&a).unwrap();
                assert_eq!((d.m1, d.n1, d.m2, d.n2), (2, 1, 2, 1));
                assert_eq!(d.l_block, IntMatrix::from_rows(&[[1], [1]]));
                assert_eq!(d.r_block, IntMatrix::from_rows(&[[1], [1]]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chain_submatrix_gives_a_plus_b() {
        // a-row and b-row linked through column 0: [[1,3],[1,1]] has det -2,
        // and the linking chain [[1,0,3],[1,1,0],[0,1,1]] has det 4 = 3 + 1
        let a = IntMatrix::from_rows(&[[1, 0, 3], [1, 1, 0], [0, 1, 1], [1, 0, 0], [0, 1, 0]]);
        let oracle = det_set_bruteforce(&a, 1000).unwrap();
        assert!(oracle.contains(&big(4)));
        match decompose(&a, 3, 1) {
            DecomposeOutcome::Certificate(c) => {
                assert!(c.verify(&a, &big(3), &big(1)), "{c:?}");
                if let AbzCertificate::ExtraElement { value, .. } = &c {
                    assert!(oracle.contains(value));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gcd_mismatch_is_reported() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 2], [2, 2]]);
        assert!(matches!(
            decompose(&a, 3, 1),
            DecomposeOutcome::Certificate(AbzCertificate::GcdMismatch { .. })
        ));
    }

    #[test]
    fn totally_unimodular_inputs() {
        let a = IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 1], [1, 0]]);
        match decompose(&a, 1, 1) {
            DecomposeOutcome::Decomposition(d) => d.verify(&a).unwrap(),
            other => panic!("{other:?}"),
        }
        match decompose(&a, 3, 1) {
            DecomposeOutcome::Certificate(c) => {
                assert!(c.verify(&a, &big(3), &big(1)));
                assert!(matches!(c, AbzCertificate::StrictSubset(_)));
            }
            other => panic!("{other:?}"),
        }
        match decompose(&a, 5, 3) {
            DecomposeOutcome::Certificate(c) => {
                assert_eq!(c, AbzCertificate::ExtraElement { value: big(1), rows: vec![0, 1] })
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diophantine_families() {
        let (a, b) = (big(3), big(1));
        assert_eq!(diophantine_shift(&big(6), &big(3), &a, &b), Some(big(2)));
        assert_eq!(diophantine_shift(&big(4), &big(1), &a, &b), Some(big(1)));
        assert_eq!(diophantine_shift(&big(0), &big(0), &a, &b), Some(big(0)));
        assert_eq!(diophantine_shift(&big(2), &big(5), &a, &b), None);
    }
}
