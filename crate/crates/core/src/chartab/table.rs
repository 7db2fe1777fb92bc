use std::sync::Arc;

use num_rational::BigRational;

use crate::charops::ClassFunction;
use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::structure::{conjugacy_classes, ClassData};

use super::cyclotomic::{Cyclotomic, RootSum};
use super::modp::{is_prime, Fp};

/// Irreducible characters of a group, one [`ClassFunction`] per class.
///
/// Ordered by degree, with the trivial character first and ties broken by
/// the lexicographic order of the value tuples (each value compared by its
/// coefficient vector over `Q(ζ_e)`).
#[derive(Debug)]
pub struct CharacterTable {
    group_id: u64,
    order: u64,
    classes: Arc<ClassData>,
    exponent: u32,
    prime: u64,
    irreducibles: Vec<ClassFunction>,
}

/// Class multiplication coefficients: entry `(i, k)` counts the `x` in class
/// `j` with `x^-1 z_k` in class `i`, for the representative `z_k` of class `k`.
pub fn class_matrix(g: &PermGroup, classes: &ClassData, j: usize) -> Result<Vec<Vec<u64>>> {
    let table = g.elements()?;
    let r = classes.len();
    let members: Vec<usize> = (0..table.len()).filter(|&x| classes.class_of_index(x) == j).collect();
    let mut m = vec![vec![0u64; r]; r];
    for k in 0..r {
        let z = classes.rep_index(k);
        for &x in &members {
            let y = table.mul(table.inv(x), z);
            m[classes.class_of_index(y)][k] += 1;
        }
    }
    Ok(m)
}

/// Least prime `l ≡ 1 (mod e)` with `l > 2√n`.
pub fn lifting_prime(e: u64, n: u64) -> u64 {
    let mut l = e + 1;
    loop {
        if l * l > 4 * n && is_prime(l) {
            return l;
        }
        l += e;
    }
}

/// The character table, computed once per group and cached on it.
pub fn compute_character_table(g: &PermGroup) -> Result<Arc<CharacterTable>> {
    g.table_cache().get_or_init(|| build(g).map(Arc::new)).clone()
}

fn build(g: &PermGroup) -> Result<CharacterTable> {
    let classes = conjugacy_classes(g)?;
    let r = classes.len();
    let order = g.order();
    let e = classes.exponent() as u32;
    let l = lifting_prime(e as u64, order);
    let f = Fp { l };
    let z = f.pow(f.primitive_root(), (l - 1) / e as u64);

    // joint eigenspaces of the class matrices acting on column vectors
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(g, &classes, j)?;
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split(f, &m, space)?);
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::SelfCheckFailed(format!("{} joint eigenspaces for {r} classes", spaces.len())));
    }

    let mut chars = Vec::with_capacity(r);
    for space in spaces {
        let w = &space[0];
        if w[0] == 0 {
            return Err(Error::SelfCheckFailed("eigenvector vanishes at the identity".into()));
        }
        let w0 = f.inv(w[0]);
        // u_i = chi(g_i)/chi(1)
        let u: Vec<u64> = (0..r).map(|i| f.mul(f.mul(w[i], w0), f.inv(classes.size(i) % l))).collect();
        let s =
            (0..r).fold(0, |acc, i| f.add(acc, f.mul(classes.size(i) % l, f.mul(u[i], u[classes.inverse_class(i)]))));
        let target = f.mul(order % l, f.inv(s));
        let degree = (1..)
            .take_while(|d: &u64| d * d <= order)
            .find(|&d| order.is_multiple_of(d) && f.mul(d % l, d % l) == target)
            .ok_or_else(|| Error::SelfCheckFailed("no degree matches the eigenvector".into()))?;
        let x: Vec<u64> = u.iter().map(|&ui| f.mul(degree % l, ui)).collect();
        let mut values = Vec::with_capacity(r);
        for i in 0..r {
            let n = classes.element_order(i);
            let zn = f.pow(z, e as u64 / n);
            let zn_inv = f.inv(zn);
            let n_inv = f.inv(n % l);
            let mut terms = Vec::new();
            for k in 0..n {
                let mut acc = 0;
                let step = f.pow(zn_inv, k);
                let mut t = 1;
                for jpow in 0..n {
                    acc = f.add(acc, f.mul(x[classes.power_class(i, jpow)], t));
                    t = f.mul(t, step);
                }
                let mk = f.mul(acc, n_inv);
                if mk > degree {
                    return Err(Error::SelfCheckFailed(format!(
                        "eigenvalue multiplicity {mk} exceeds the degree {degree}"
                    )));
                }
                if mk > 0 {
                    terms.push((k, mk as i64));
                }
            }
            values.push(Cyclotomic::from_int_terms(n as u32, terms));
        }
        chars.push(values);
    }

    let mut keyed: Vec<(u64, bool, Vec<Vec<BigRational>>, Vec<Cyclotomic>)> = chars
        .into_iter()
        .map(|vals| {
            let deg = vals[0].to_i64().unwrap_or(0) as u64;
            let trivial = vals.iter().all(|v| *v == Cyclotomic::one());
            let key = vals.iter().map(|v| v.dense(e)).collect();
            (deg, !trivial, key, vals)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    let irreducibles: Vec<ClassFunction> =
        keyed.into_iter().map(|(_, _, _, vals)| ClassFunction::from_parts(g.id(), classes.clone(), vals)).collect();
    let table = CharacterTable { group_id: g.id(), order, classes, exponent: e, prime: l, irreducibles };
    table.verify()?;
    Ok(table)
}

// Split a joint eigenspace (rows in reduced echelon form) into the
// eigenspaces of `m` restricted to it.
fn split(f: Fp, m: &[Vec<u64>], space: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = space.len();
    let r = m.len();
    let pivots: Vec<usize> = space.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect();
    // restricted[t][s] = coordinate t of m * b_s
    let mut restricted = vec![vec![0u64; d]; d];
    for (s, b) in space.iter().enumerate() {
        for (t, &pt) in pivots.iter().enumerate() {
            let row = &m[pt];
            let mut acc = 0;
            for c in 0..r {
                if b[c] != 0 && row[c] != 0 {
                    acc = f.add(acc, f.mul(row[c] % f.l, b[c]));
                }
            }
            restricted[t][s] = acc;
        }
    }
    let poly = f.charpoly(&restricted);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..f.l {
        if f.eval(&poly, lambda) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| if i == j { f.sub(x, lambda) } else { x }).collect())
            .collect();
        let null = f.nullspace(&shifted);
        total += null.len();
        let mut vectors: Vec<Vec<u64>> = null
            .iter()
            .map(|c| {
                let mut v = vec![0u64; r];
                for (s, &cs) in c.iter().enumerate() {
                    if cs != 0 {
                        for k in 0..r {
                            v[k] = f.add(v[k], f.mul(cs, space[s][k]));
                        }
                    }
                }
                v
            })
            .collect();
        f.rref(&mut vectors);
        out.push(vectors);
    }
    if total != d {
        return Err(Error::SelfCheckFailed("class matrix is not diagonalizable".into()));
    }
    Ok(out)
}

impl CharacterTable {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn irr(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.irreducibles[i].degree_u64()
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.degree(i)).collect()
    }

    pub fn centralizer_orders(&self) -> Vec<u64> {
        (0..self.classes.len()).map(|i| self.classes.centralizer_order(i)).collect()
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.irreducibles[chi].values()[class]
    }

    fn root_sums(&self) -> Vec<Vec<RootSum>> {
        self.irreducibles
            .iter()
            .map(|chi| {
                chi.values()
                    .iter()
                    .map(|v| RootSum::from_cyclotomic(v, self.exponent).expect("integral values"))
                    .collect()
            })
            .collect()
    }

    /// Exact row and column orthogonality, the degree sum, and degrees
    /// dividing the group order.
    pub fn verify(&self) -> Result<()> {
        let r = self.len();
        let e = self.exponent;
        if r != self.classes.len() {
            return Err(Error::SelfCheckFailed("table is not square".into()));
        }
        for chi in &self.irreducibles {
            if chi.values().iter().any(|v| !v.is_integral() || !e.is_multiple_of(v.conductor())) {
                return Err(Error::SelfCheckFailed("a value is not an algebraic integer of Q(ζ_e)".into()));
            }
        }
        let sums = self.root_sums();
        for a in 0..r {
            for b in a..r {
                let mut acc = RootSum::zero(e);
                for c in 0..r {
                    acc.add_product(self.classes.size(c) as i128, &sums[a][c], &sums[b][c], true);
                }
                let want = if a == b { self.order as i64 } else { 0 };
                if acc.to_cyclotomic() != Cyclotomic::from_int(want) {
                    return Err(Error::SelfCheckFailed(format!("rows {a} and {b} are not orthogonal")));
                }
            }
        }
        for i in 0..r {
            for j in i..r {
                let mut acc = RootSum::zero(e);
                for row in &sums {
                    acc.add_product(1, &row[i], &row[j], true);
                }
                let want = if i == j { self.classes.centralizer_order(i) as i64 } else { 0 };
                if acc.to_cyclotomic() != Cyclotomic::from_int(want) {
                    return Err(Error::SelfCheckFailed(format!("columns {i} and {j} are not orthogonal")));
                }
            }
        }
        let degrees = self.degrees();
        if degrees.iter().map(|d| d * d).sum::<u64>() != self.order
            || degrees.iter().any(|&d| d == 0 || !self.order.is_multiple_of(d))
        {
            return Err(Error::SelfCheckFailed("degrees do not match the group order".into()));
        }
        Ok(())
    }

    /// Text dump: a header line of `rep:size:order` per class, then one line
    /// per irreducible; columns padded to a common width.
    pub fn render(&self) -> String {
        let r = self.classes.len();
        let mut cols: Vec<Vec<String>> = Vec::with_capacity(r + 1);
        let mut first = vec!["class".to_string()];
        first.extend((1..=r).map(|i| format!("X.{i}")));
        cols.push(first);
        for c in 0..r {
            let mut col = vec![format!(
                "{}:{}:{}",
                self.classes.rep(c).to_cycle_string(),
                self.classes.size(c),
                self.classes.element_order(c)
            )];
            col.extend(self.irreducibles.iter().map(|chi| chi.values()[c].to_string()));
            cols.push(col);
        }
        let widths: Vec<usize> = cols.iter().map(|c| c.iter().map(|s| s.chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in 0..=r {
            let line: Vec<String> = cols.iter().zip(&widths).map(|(c, &w)| format!("{:>w$}", c[row], w = w)).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
