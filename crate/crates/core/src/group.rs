//! Dense finite groups stored as full Cayley tables.
//!
//! Every group has its identity at index 0. Tables are immutable once built;
//! derived data (element orders, conjugacy classes, the subgroup lattice, the
//! normal subgroups) is computed lazily, once, and may be read concurrently.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::arith;
use crate::bitset::ElemSet;
use crate::error::{GroupError, Result};
use crate::lattice::Lattice;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Element index inside a [`Group`].
pub type Elem = usize;

/// Default bound on the order of groups that are materialized at all.
pub const DEFAULT_MAX_ORDER: usize = 1500;
/// Default bound on the order of groups whose full subgroup lattice is built.
pub const DEFAULT_LATTICE_BOUND: usize = 1500;

/// Reads `SIGMA_LATTICE_BOUND`, falling back to [`DEFAULT_LATTICE_BOUND`].
pub fn lattice_bound_from_env() -> usize {
    std::env::var("SIGMA_LATTICE_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_LATTICE_BOUND)
}

pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
    lattice_bound: usize,
    elem_orders: OnceLock<Vec<usize>>,
    classes: OnceLock<Vec<Vec<Elem>>>,
    whole: OnceLock<Subgroup>,
    pub(crate) lattice: OnceLock<Lattice>,
    pub(crate) normals: OnceLock<Vec<Subgroup>>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group::from_parts(self.order, self.mul.clone(), self.inv.clone(), self.labels.clone())
            .with_lattice_bound(self.lattice_bound)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("order", &self.order).finish()
    }
}

impl Group {
    fn from_parts(order: usize, mul: Vec<u32>, inv: Vec<u32>, labels: Option<Vec<String>>) -> Self {
        Group {
            order,
            mul,
            inv,
            labels,
            lattice_bound: DEFAULT_LATTICE_BOUND,
            elem_orders: OnceLock::new(),
            classes: OnceLock::new(),
            whole: OnceLock::new(),
            lattice: OnceLock::new(),
            normals: OnceLock::new(),
        }
    }

    /// Builds a group from a row-major table already known to be valid with
    /// identity 0. Inverses are read off the table.
    pub(crate) fn from_valid_table(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Self {
        let mut inv = vec![0u32; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            let row = &mul[a * order..(a + 1) * order];
            *slot = row.iter().position(|&c| c == 0).expect("row contains identity") as u32;
        }
        Group::from_parts(order, mul, inv, labels)
    }

    pub fn with_lattice_bound(mut self, bound: usize) -> Self {
        self.lattice_bound = bound;
        self.lattice = OnceLock::new();
        self
    }

    pub fn trivial() -> Self {
        Group::from_valid_table(1, vec![0], None)
    }

    /// Breadth-first closure of permutation generators. Element 0 is the
    /// identity; elements are numbered in discovery order.
    pub fn from_generators(gens: &[Permutation], max_order: usize) -> Result<Self> {
        let degree = gens.iter().map(|p| p.degree()).max().unwrap_or(1).max(1);
        let gens: Vec<Permutation> = gens.iter().map(|p| p.extended(degree)).collect();

        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        // parent[j] = (i, s) with element j = element i * gens[s]
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];

        let mut i = 0;
        while i < elements.len() {
            for (s, g) in gens.iter().enumerate() {
                let prod = elements[i].compose(g);
                let j = match index.get(&prod) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= max_order {
                            return Err(GroupError::OrderBoundExceeded { bound: max_order });
                        }
                        index.insert(prod.clone(), j);
                        elements.push(prod);
                        parent.push((i, s));
                        j
                    }
                };
                right[s].push(j as u32);
            }
            i += 1;
        }

        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
        }
        for b in 1..n {
            let (pb, s) = parent[b];
            for a in 0..n {
                let left = mul[a * n + pb] as usize;
                mul[a * n + b] = right[s][left];
            }
        }
        let labels = elements.iter().map(|p| p.to_string()).collect();
        Ok(Group::from_valid_table(n, mul, Some(labels)))
    }

    /// Validates and adopts an arbitrary multiplication table. The identity
    /// is relabelled to index 0 if necessary.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &c in row {
                if c >= n || std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::InvalidTable(format!("row {a} is not a permutation")));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in rows {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return Err(GroupError::InvalidTable(format!("column {b} is not a permutation")));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a))
            .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;

        let assoc_ok = |a: usize, b: usize, c: usize| rows[rows[a][b]][c] == rows[a][rows[b][c]];
        if n <= 128 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc_ok(a, b, c) {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Deterministic sample of triples for large tables.
            let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..20_000 {
                let (a, b, c) = (next(), next(), next());
                if !assoc_ok(a, b, c) {
                    return Err(GroupError::InvalidTable(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }

        // swap e <-> 0
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
            }
        }
        Ok(Group::from_valid_table(n, mul, None))
    }

    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Group::from_valid_table(n, mul, None)
    }

    /// Dihedral group of order `order` (symmetries of a regular `order/2`-gon).
    pub fn dihedral(order: usize) -> Result<Self> {
        if order < 2 || order % 2 != 0 {
            return Err(GroupError::Parse(format!("dihedral order {order} must be even")));
        }
        let n = order / 2;
        Group::power_semidirect(&Group::cyclic(n), &Group::cyclic(2), n as i64 - 1, usize::MAX)
    }

    /// Dicyclic group of order `order` (divisible by 4); `quaternion(8)` is Q8.
    pub fn quaternion(order: usize) -> Result<Self> {
        if order < 4 || order % 4 != 0 {
            return Err(GroupError::Parse(format!(
                "quaternion order {order} must be a positive multiple of 4"
            )));
        }
        let n = order / 4;
        let m = 2 * n;
        let idx = |k: usize, e: usize| k % m + m * e;
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            let (k1, e1) = (a % m, a / m);
            for b in 0..order {
                let (k2, e2) = (b % m, b / m);
                let c = match (e1, e2) {
                    (0, _) => idx(k1 + k2, e2),
                    (1, 0) => idx(k1 + m - k2, 1),
                    _ => idx(k1 + m - k2 + n, 0),
                };
                mul[a * order + b] = c as u32;
            }
        }
        Ok(Group::from_valid_table(order, mul, None))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let gens = match n {
            0 | 1 => vec![],
            2 => vec![Permutation::from_cycles(2, &[vec![0, 1]])?],
            _ => vec![
                Permutation::from_cycles(n, &[vec![0, 1]])?,
                Permutation::from_cycles(n, &[(0..n).collect()])?,
            ],
        };
        Group::from_generators(&gens, usize::MAX)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens = if n < 3 {
            vec![]
        } else {
            (2..n)
                .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
                .collect::<Result<Vec<_>>>()?
        };
        Group::from_generators(&gens, usize::MAX)
    }

    /// `C_p ⋊ C_q` where a generator of `C_q` acts by `x -> x^k`.
    pub fn frobenius(p: usize, q: usize, k: i64) -> Result<Self> {
        Group::power_semidirect(&Group::cyclic(p), &Group::cyclic(q), k, usize::MAX)
    }

    /// `SL(2, p)` acting on the nonzero vectors of `F_p^2`.
    pub fn sl2(p: usize) -> Result<Self> {
        Group::matrix_group(p, false)
    }

    /// `GL(2, p)` acting on the nonzero vectors of `F_p^2`.
    pub fn gl2(p: usize) -> Result<Self> {
        Group::matrix_group(p, true)
    }

    fn matrix_group(p: usize, general: bool) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(GroupError::Parse(format!("{p} is not prime")));
        }
        let point = |x: usize, y: usize| x + p * y - 1;
        let as_perm = |m: [usize; 4]| {
            let mut images = vec![0; p * p - 1];
            for y in 0..p {
                for x in 0..p {
                    if x == 0 && y == 0 {
                        continue;
                    }
                    let nx = (m[0] * x + m[1] * y) % p;
                    let ny = (m[2] * x + m[3] * y) % p;
                    images[point(x, y)] = point(nx, ny);
                }
            }
            Permutation::new(images)
        };
        let mut gens = vec![as_perm([1, 1, 0, 1])?, as_perm([0, p - 1, 1, 0])?];
        if general {
            let root = (1..p)
                .find(|&g| arith::multiplicative_order(g as u64, p as u64) == Some(p as u64 - 1))
                .unwrap_or(1);
            gens.push(as_perm([root, 0, 0, 1])?);
        }
        Group::from_generators(&gens, usize::MAX)
    }

    /// Direct product; the pair `(a, b)` has index `a + |g| * b`.
    pub fn direct_product(g: &Group, h: &Group, max_order: usize) -> Result<Self> {
        let (n, m) = (g.order, h.order);
        let order = n * m;
        if order > max_order {
            return Err(GroupError::OrderBoundExceeded { bound: max_order });
        }
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            let (a1, b1) = (x % n, x / n);
            for y in 0..order {
                let (a2, b2) = (y % n, y / n);
                mul[x * order + y] = (g.mul(a1, a2) + n * h.mul(b1, b2)) as u32;
            }
        }
        let labels = match (&g.labels, &h.labels) {
            (None, None) => None,
            _ => Some(
                (0..order)
                    .map(|x| format!("({}, {})", g.label(x % n), h.label(x / n)))
                    .collect(),
            ),
        };
        Ok(Group::from_valid_table(order, mul, labels))
    }

    /// `n ⋊ h` where `action[x]` is the image array of the automorphism of `n`
    /// assigned to `x ∈ h`. Multiplication is `(a, x)(b, y) = (a·x(b), xy)` and
    /// the pair `(a, x)` has index `a + |n| * x`.
    pub fn semidirect_product(n: &Group, h: &Group, action: &[Vec<Elem>], max_order: usize) -> Result<Self> {
        let (k, m) = (n.order, h.order);
        if action.len() != m {
            return Err(GroupError::NotAHomomorphism { x: action.len(), y: m });
        }
        for (x, phi) in action.iter().enumerate() {
            if phi.len() != k {
                return Err(GroupError::NotAnAutomorphism { element: x, reason: "wrong length".into() });
            }
            let mut seen = vec![false; k];
            for &v in phi {
                if v >= k || std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::NotAnAutomorphism { element: x, reason: "not a bijection".into() });
                }
            }
            for a in 0..k {
                for b in 0..k {
                    if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                        return Err(GroupError::NotAnAutomorphism {
                            element: x,
                            reason: format!("fails on ({a}, {b})"),
                        });
                    }
                }
            }
        }
        for x in 0..m {
            for y in 0..m {
                let xy = h.mul(x, y);
                if (0..k).any(|b| action[xy][b] != action[x][action[y][b]]) {
                    return Err(GroupError::NotAHomomorphism { x, y });
                }
            }
        }
        let order = k * m;
        if order > max_order {
            return Err(GroupError::OrderBoundExceeded { bound: max_order });
        }
        let mut mul = vec![0u32; order * order];
        for p in 0..order {
            let (a, x) = (p % k, p / k);
            for q in 0..order {
                let (b, y) = (q % k, q / k);
                mul[p * order + q] = (n.mul(a, action[x][b]) + k * h.mul(x, y)) as u32;
            }
        }
        Ok(Group::from_valid_table(order, mul, None))
    }

    /// `n ⋊ h` for cyclic `h`, where the first generator of `h` acts on the
    /// abelian group `n` by `x -> x^k`.
    pub fn power_semidirect(n: &Group, h: &Group, k: i64, max_order: usize) -> Result<Self> {
        let m = h.order;
        let gen = (0..m)
            .find(|&x| h.element_order(x) == m)
            .ok_or_else(|| GroupError::Parse("acting group must be cyclic".into()))?;
        let exp = n.exponent() as i64;
        let k = k.rem_euclid(exp.max(1)) as u64;
        let mut action = vec![Vec::new(); m];
        let mut x = 0;
        let mut power = 1u64;
        for _ in 0..m {
            action[x] = (0..n.order).map(|a| n.pow(a, power)).collect();
            x = h.mul(x, gen);
            power = power * k % exp.max(1) as u64;
        }
        Group::semidirect_product(n, h, &action, max_order)
    }

    /// The subgroup `sub` as a group in its own right, plus the map from new
    /// indices to parent indices. Identity stays at index 0.
    pub fn induced(&self, sub: &Subgroup) -> (Group, Vec<Elem>) {
        let members = sub.members().to_vec();
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i;
        }
        let n = members.len();
        let mut mul = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mul[i * n + j] = local[self.mul(a, b)] as u32;
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| members.iter().map(|&x| l[x].clone()).collect());
        (
            Group::from_valid_table(n, mul, labels).with_lattice_bound(self.lattice_bound),
            members,
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lattice_bound(&self) -> usize {
        self.lattice_bound
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn element_orders(&self) -> &[usize] {
        self.elem_orders.get_or_init(|| {
            (0..self.order)
                .map(|a| {
                    let mut x = a;
                    let mut k = 1;
                    while x != 0 {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn element_order(&self, a: Elem) -> usize {
        self.element_orders()[a]
    }

    pub fn exponent(&self) -> usize {
        self.element_orders()
            .iter()
            .fold(1, |l, &o| l / arith::gcd(l as u64, o as u64) as usize * o)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes of elements, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<Elem>] {
        self.classes.get_or_init(|| {
            let mut assigned = vec![false; self.order];
            let mut classes = Vec::new();
            for a in 0..self.order {
                if assigned[a] {
                    continue;
                }
                let mut class = ElemSet::new(self.order);
                for g in 0..self.order {
                    class.insert(self.conj(a, g));
                }
                let class = class.to_vec();
                for &c in &class {
                    assigned[c] = true;
                }
                classes.push(class);
            }
            classes
        })
    }

    /// Checks the Latin-square property and identity/inverse laws exactly, and
    /// associativity on all triples (small groups) or `samples` pseudo-random
    /// triples. Intended for tests and table validation.
    pub fn check_axioms(&self, samples: usize) -> bool {
        let n = self.order;
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row[self.mul(a, b)], true)
                    || std::mem::replace(&mut col[self.mul(b, a)], true)
                {
                    return false;
                }
            }
            if self.mul(0, a) != a || self.mul(a, 0) != a || self.mul(a, self.inv(a)) != 0 {
                return false;
            }
        }
        let mut state: u64 = 0x2545_F491_4F6C_DD1D;
        for _ in 0..samples {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (state >> 33) as usize % n;
            let b = (state >> 13) as usize % n;
            let c = (state >> 3) as usize % n;
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return false;
            }
        }
        true
    }

    /// Row-major table bytes, for determinism checks.
    pub fn table_bytes(&self) -> Vec<u8> {
        self.mul.iter().flat_map(|c| c.to_le_bytes()).collect()
    }

    /// Row-major table as nested vectors.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// The whole group as a subgroup, with a small generating set.
    pub fn whole(&self) -> &Subgroup {
        self.whole
            .get_or_init(|| self.subgroup_from_set(&ElemSet::full(self.order)))
    }

    pub fn generators(&self) -> &[Elem] {
        self.whole().gens()
    }
}
