//! Finite group adapters and Nielsen-class combinatorics: admissible
//! tuples, Hurwitz moves, canonical forms under simultaneous conjugation,
//! class enumeration, and the projection to S3 classes.

use crate::error::Error;
use crate::permtools::Permutation;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Sym3,
    Sym4,
    Xn(u64),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Sym3 => write!(f, "sym3"),
            GroupKind::Sym4 => write!(f, "sym4"),
            GroupKind::Xn(n) => write!(f, "xn({n})"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sym3" => Ok(GroupKind::Sym3),
            "sym4" => Ok(GroupKind::Sym4),
            _ => {
                let inner = s
                    .strip_prefix("xn(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "unknown group kind {s:?}; expected sym3, sym4 or xn(N)"
                        ))
                    })?;
                let n: u64 = inner
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad modulus in {s:?}")))?;
                Ok(GroupKind::Xn(n))
            }
        }
    }
}

/// A finite group as a complete multiplication table, together with the
/// designated conjugacy class of admissible branch cycles.
///
/// Element 0 is the identity.  Table multiplication `m(a, b)` is function
/// composition applying `b` first, so that `m(m(inv(t), s), t)` is the
/// conjugate t^-1 s t of the Hurwitz move formula.
pub struct GroupTable {
    kind: GroupKind,
    order: usize,
    mult: Vec<u16>,
    inv: Vec<u16>,
    conj: Vec<u16>, // conj[x*order + g] = g^-1 x g
    labels: Vec<String>,
    admissible: Vec<u16>,
    admissible_mask: Vec<bool>,
    s3_image: Vec<u16>,
    // Non-inner automorphisms that tuples are additionally reduced by:
    // for xn(N) the unit scalings (v,t) -> (uv,t), empty for sym kinds.
    // Needed so the class count over each Omega class is projective space
    // rather than the set of nonzero vectors.
    scalings: Vec<Vec<u16>>,
}

impl GroupTable {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn m(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// g^-1 x g.
    #[inline]
    pub fn conjugate(&self, x: u16, g: u16) -> u16 {
        self.conj[x as usize * self.order + g as usize]
    }

    pub fn label(&self, a: u16) -> &str {
        &self.labels[a as usize]
    }

    pub fn admissible(&self) -> &[u16] {
        &self.admissible
    }

    pub fn is_admissible(&self, a: u16) -> bool {
        self.admissible_mask[a as usize]
    }

    /// Image in the sym3 table under the designated quotient (sym4 -> S3 via
    /// the Klein quotient, xn(N) -> S3 by forgetting the module part,
    /// identity on sym3).
    pub fn s3_image(&self, a: u16) -> u16 {
        self.s3_image[a as usize]
    }

    pub fn element_of_label(&self, label: &str) -> Option<u16> {
        self.labels.iter().position(|l| l == label).map(|i| i as u16)
    }

    /// Subgroup generated by `gens` is the whole group?
    pub fn generates(&self, gens: &[u16]) -> bool {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack: Vec<u16> = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.m(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Full structural check; used by tests and after cache reloads.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.order as u16;
        for a in 0..n {
            if self.m(0, a) != a || self.m(a, 0) != a {
                return Err(Error::Internal("identity is not at index 0".into()));
            }
            if self.m(a, self.inv(a)) != 0 || self.m(self.inv(a), a) != 0 {
                return Err(Error::Internal("inverse table inconsistent".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.m(self.m(a, b), c) != self.m(a, self.m(b, c)) {
                        return Err(Error::Internal("multiplication not associative".into()));
                    }
                }
            }
        }
        for &x in &self.admissible {
            for g in 0..n {
                if !self.is_admissible(self.conjugate(x, g)) {
                    return Err(Error::Internal(
                        "admissible class not closed under conjugation".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::from_images(prefix.clone()).unwrap());
            return;
        }
        for x in 0..n as u32 {
            if !used[x as usize] {
                used[x as usize] = true;
                prefix.push(x);
                rec(prefix, used, n, out);
                prefix.pop();
                used[x as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out // lexicographic by image vector; identity first
}

fn perm_label(p: &Permutation) -> String {
    if p.is_identity() {
        return "e".into();
    }
    let mut seen = vec![false; p.degree()];
    let mut out = String::new();
    for start in 0..p.degree() {
        if seen[start] || p.apply(start as u32) as usize == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start as u32;
        while !seen[x as usize] {
            seen[x as usize] = true;
            out.push_str(&(x + 1).to_string());
            x = p.apply(x);
        }
        out.push(')');
    }
    out
}

fn is_transposition(p: &Permutation) -> bool {
    p.degree() - p.fixed_points() == 2
}

fn build_sym(n: usize, kind: GroupKind) -> GroupTable {
    let perms = all_perms(n);
    let order = perms.len();
    let index: HashMap<&[u32], u16> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.images(), i as u16))
        .collect();
    let mut mult = vec![0u16; order * order];
    let mut inv = vec![0u16; order];
    for (a, pa) in perms.iter().enumerate() {
        inv[a] = index[pa.inverse().images()];
        for (b, pb) in perms.iter().enumerate() {
            // a*b applies b first
            mult[a * order + b] = index[pb.then(pa).images()];
        }
    }
    let admissible: Vec<u16> = perms
        .iter()
        .enumerate()
        .filter(|(_, p)| is_transposition(p))
        .map(|(i, _)| i as u16)
        .collect();
    let s3_image = if n == 3 {
        (0..order as u16).collect()
    } else {
        sym4_klein_quotient(&perms, &index)
    };
    finish_table(
        kind,
        order,
        mult,
        inv,
        perms.iter().map(perm_label).collect(),
        admissible,
        s3_image,
        Vec::new(),
    )
}

/// sym4 -> sym3 via conjugation on the three double transpositions, with
/// labels chosen so that (12) -> (12) and (23) -> (23):
/// (14)(23) is letter 1, (13)(24) is letter 2, (12)(34) is letter 3.
fn sym4_klein_quotient(perms: &[Permutation], index: &HashMap<&[u32], u16>) -> Vec<u16> {
    let klein: Vec<Permutation> = [
        [&[0u32, 3][..], &[1, 2][..]], // (14)(23)
        [&[0, 2][..], &[1, 3][..]],    // (13)(24)
        [&[0, 1][..], &[2, 3][..]],    // (12)(34)
    ]
    .iter()
    .map(|cycles| Permutation::from_cycles(4, cycles).unwrap())
    .collect();
    let s3 = all_perms(3);
    let s3_index: HashMap<&[u32], u16> = s3
        .iter()
        .enumerate()
        .map(|(i, p)| (p.images(), i as u16))
        .collect();
    perms
        .iter()
        .map(|g| {
            let images: Vec<u32> = klein
                .iter()
                .map(|t| {
                    // g t g^-1, so that the label map is a homomorphism for
                    // the apply-right-first table multiplication.
                    let image = g.inverse().then(t).then(g);
                    klein.iter().position(|k| *k == image).unwrap() as u32
                })
                .collect();
            let _ = index; // index layout documented above
            s3_index[Permutation::from_images(images).unwrap().images()]
        })
        .collect()
}

/// X_N = M : S3 with M = {(a,b,c) in (Z/N)^3 : a+b+c=0}, S3 permuting the
/// coordinates.  Element index = tau_index * N^2 + (a*N + b) with c implied.
fn build_xn(n: u64) -> Result<GroupTable, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("xn modulus {n} < 2")));
    }
    if 6 * n * n > u16::MAX as u64 {
        return Err(Error::DomainTooLarge(format!("xn({n}) order exceeds index space")));
    }
    let s3 = all_perms(3);
    let nn = (n * n) as usize;
    let order = 6 * nn;
    let module = |a: u64, b: u64| -> [u64; 3] { [a, b, (2 * n - (a + b) % n) % n] };
    let decode = |i: usize| -> (usize, [u64; 3]) {
        let tau = i / nn;
        let v = i % nn;
        (tau, module(v as u64 / n, v as u64 % n))
    };
    let encode = |tau: usize, v: [u64; 3]| -> u16 { (tau * nn + (v[0] * n + v[1]) as usize) as u16 };
    let act = |sigma: &Permutation, w: [u64; 3]| -> [u64; 3] {
        let si = sigma.inverse();
        [0, 1, 2].map(|i| w[si.apply(i) as usize])
    };
    let s3_mult = |a: usize, b: usize| -> usize {
        // apply b first
        s3.iter().position(|p| *p == s3[b].then(&s3[a])).unwrap()
    };
    let mut mult = vec![0u16; order * order];
    let mut inv = vec![0u16; order];
    for i in 0..order {
        let (ti, vi) = decode(i);
        for j in 0..order {
            let (tj, vj) = decode(j);
            let w = act(&s3[ti], vj);
            mult[i * order + j] = encode(
                s3_mult(ti, tj),
                [0, 1, 2].map(|k| (vi[k] + w[k]) % n),
            );
        }
    }
    for i in 0..order {
        let (ti, vi) = decode(i);
        let tinv = s3.iter().position(|p| *p == s3[ti].inverse()).unwrap();
        let w = act(&s3[tinv], vi);
        inv[i] = encode(tinv, [0, 1, 2].map(|k| (n - w[k] % n) % n));
    }
    let mut admissible = Vec::new();
    for i in 0..order {
        let (ti, vi) = decode(i);
        if !is_transposition(&s3[ti]) {
            continue;
        }
        let w = act(&s3[ti], vi);
        if (0..3).all(|k| (vi[k] + w[k]) % n == 0) {
            admissible.push(i as u16);
        }
    }
    let labels = (0..order)
        .map(|i| {
            let (ti, vi) = decode(i);
            format!("[{},{},{}]{}", vi[0], vi[1], vi[2], perm_label(&s3[ti]))
        })
        .collect();
    let s3_image = (0..order).map(|i| (i / nn) as u16).collect();
    let scalings = (2..n)
        .filter(|&u| {
            let mut a = u;
            let mut b = n;
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a == 1
        })
        .map(|u| {
            (0..order)
                .map(|i| {
                    let (ti, vi) = decode(i);
                    encode(ti, [0, 1, 2].map(|k| vi[k] * u % n))
                })
                .collect()
        })
        .collect();
    Ok(finish_table(
        GroupKind::Xn(n),
        order,
        mult,
        inv,
        labels,
        admissible,
        s3_image,
        scalings,
    ))
}

fn finish_table(
    kind: GroupKind,
    order: usize,
    mult: Vec<u16>,
    inv: Vec<u16>,
    labels: Vec<String>,
    admissible: Vec<u16>,
    s3_image: Vec<u16>,
    scalings: Vec<Vec<u16>>,
) -> GroupTable {
    let mut conj = vec![0u16; order * order];
    for x in 0..order {
        for g in 0..order {
            let ig = inv[g] as usize;
            conj[x * order + g] = mult[mult[ig * order + x] as usize * order + g];
        }
    }
    let mut admissible_mask = vec![false; order];
    for &a in &admissible {
        admissible_mask[a as usize] = true;
    }
    GroupTable {
        kind,
        order,
        mult,
        inv,
        conj,
        labels,
        admissible,
        admissible_mask,
        s3_image,
        scalings,
    }
}

pub fn build_group(kind: GroupKind) -> Result<GroupTable, Error> {
    match kind {
        GroupKind::Sym3 => Ok(build_sym(3, kind)),
        GroupKind::Sym4 => Ok(build_sym(4, kind)),
        GroupKind::Xn(n) => build_xn(n),
    }
}

/// A b-tuple of admissible elements with product identity that generates
/// the whole group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NielsenTuple {
    entries: Vec<u16>,
}

impl NielsenTuple {
    pub fn new(table: &GroupTable, entries: Vec<u16>) -> Result<Self, Error> {
        for &e in &entries {
            if e as usize >= table.order() || !table.is_admissible(e) {
                return Err(Error::Inadmissible(format!(
                    "entry {e} is not in the admissible class"
                )));
            }
        }
        let product = entries.iter().fold(0u16, |acc, &e| table.m(acc, e));
        if product != 0 {
            return Err(Error::Inadmissible(format!(
                "tuple product is {}, not the identity",
                table.label(product)
            )));
        }
        if !table.generates(&entries) {
            return Err(Error::Inadmissible(
                "tuple does not generate the whole group".into(),
            ));
        }
        Ok(NielsenTuple { entries })
    }

    pub fn b(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn display(&self, table: &GroupTable) -> String {
        let parts: Vec<&str> = self.entries.iter().map(|&e| table.label(e)).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveDirection {
    Forward,
    Inverse,
}

fn hurwitz_move_raw(table: &GroupTable, entries: &mut [u16], i: usize, direction: MoveDirection) {
    let (x, y) = (entries[i - 1], entries[i]);
    match direction {
        MoveDirection::Forward => {
            entries[i - 1] = y;
            entries[i] = table.m(table.m(table.inv(y), x), y);
        }
        MoveDirection::Inverse => {
            entries[i - 1] = table.m(table.m(x, y), table.inv(x));
            entries[i] = x;
        }
    }
}

/// The i-th sphere braid generator, 1 <= i <= b-1, acting on a tuple:
/// (..., s_i, s_{i+1}, ...) -> (..., s_{i+1}, s_{i+1}^-1 s_i s_{i+1}, ...).
pub fn hurwitz_move(
    table: &GroupTable,
    t: &NielsenTuple,
    i: usize,
    direction: MoveDirection,
) -> Result<NielsenTuple, Error> {
    if i < 1 || i >= t.b() {
        return Err(Error::InvalidParameter(format!(
            "move index {i} out of range 1..={}",
            t.b() - 1
        )));
    }
    let mut entries = t.entries.clone();
    hurwitz_move_raw(table, &mut entries, i, direction);
    Ok(NielsenTuple { entries })
}

fn canonicalize_raw(table: &GroupTable, entries: &[u16]) -> Vec<u16> {
    let mut best = entries.to_vec();
    let mut scratch = vec![0u16; entries.len()];
    for pass in 0..=table.scalings.len() {
        let scaled: std::borrow::Cow<[u16]> = if pass == 0 {
            entries.into()
        } else {
            let s = &table.scalings[pass - 1];
            entries.iter().map(|&e| s[e as usize]).collect::<Vec<u16>>().into()
        };
        if *scaled < *best {
            best.copy_from_slice(&scaled);
        }
        for g in 1..table.order() as u16 {
            for (s, &e) in scratch.iter_mut().zip(scaled.iter()) {
                *s = table.conjugate(e, g);
            }
            if scratch < best {
                best.copy_from_slice(&scratch);
            }
        }
    }
    best
}

/// Lexicographically least simultaneous conjugate of `t`.
pub fn canonicalize(table: &GroupTable, t: &NielsenTuple) -> NielsenTuple {
    NielsenTuple {
        entries: canonicalize_raw(table, &t.entries),
    }
}

/// A deterministic start tuple: for sym3, ((12),(12),(23),...,(23)); for
/// sym4 the same shape does not generate, so the last two entries become
/// (34); for xn(N), a deterministic search over admissible patterns
/// (x,x,y,...,y), then (x,x,y,...,y,z,z).
pub fn seed_tuple(table: &GroupTable, b: usize) -> Result<NielsenTuple, Error> {
    if b < 4 || b % 2 != 0 {
        return Err(Error::InvalidParameter(format!("b must be even and >= 4, got {b}")));
    }
    let mut candidates: Vec<Vec<u16>> = Vec::new();
    match table.kind() {
        GroupKind::Sym3 | GroupKind::Sym4 => {
            let t12 = table.element_of_label("(12)").unwrap();
            let t23 = table.element_of_label("(23)").unwrap();
            let mut seed = vec![t12, t12];
            seed.resize(b, t23);
            candidates.push(seed.clone());
            if table.kind() == GroupKind::Sym4 && b >= 6 {
                let t34 = table.element_of_label("(34)").unwrap();
                seed[b - 2] = t34;
                seed[b - 1] = t34;
                candidates.push(seed);
            }
        }
        GroupKind::Xn(_) => {
            let adm = table.admissible();
            for &x in adm {
                for &y in adm {
                    if y == x {
                        continue;
                    }
                    let mut t = vec![x, x];
                    t.resize(b, y);
                    candidates.push(t);
                    if b >= 6 {
                        for &z in adm {
                            if z == x || z == y {
                                continue;
                            }
                            let mut t = vec![x, x];
                            t.resize(b - 2, y);
                            t.push(z);
                            t.push(z);
                            candidates.push(t);
                        }
                    }
                }
            }
        }
    }
    for entries in candidates {
        if let Ok(t) = NielsenTuple::new(table, entries) {
            return Ok(t);
        }
    }
    Err(Error::NoSeed(format!(
        "no admissible generating seed for {} with b={b}",
        table.kind()
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMethod {
    OrbitBfs,
    Exhaustive,
}

/// The set of Nielsen classes for (group, b): canonical representatives in
/// lexicographic order plus reverse lookup.
pub struct ClassSet {
    kind: GroupKind,
    b: usize,
    representatives: Vec<NielsenTuple>,
    index: HashMap<Vec<u16>, usize>,
}

impl ClassSet {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[NielsenTuple] {
        &self.representatives
    }

    pub fn rep(&self, i: usize) -> &NielsenTuple {
        &self.representatives[i]
    }

    /// Class index of an arbitrary admissible tuple.
    pub fn class_of(&self, table: &GroupTable, t: &NielsenTuple) -> Option<usize> {
        self.index.get(&canonicalize(table, t).entries).copied()
    }

    pub fn index_of_canonical(&self, entries: &[u16]) -> Option<usize> {
        self.index.get(entries).copied()
    }

    fn from_canonical_set(kind: GroupKind, b: usize, set: HashSet<Vec<u16>>) -> ClassSet {
        let mut reps: Vec<Vec<u16>> = set.into_iter().collect();
        reps.sort_unstable();
        let index = reps
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        ClassSet {
            kind,
            b,
            representatives: reps
                .into_iter()
                .map(|entries| NielsenTuple { entries })
                .collect(),
            index,
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), Error> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "nielsen-cache v1 {} {} {}", self.kind, self.b, self.len())?;
        for rep in &self.representatives {
            let words: Vec<String> = rep.entries.iter().map(|e| e.to_string()).collect();
            writeln!(out, "{}", words.join(" "))?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<ClassSet, Error> {
        let file = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut lines = file.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::CacheFormat("empty cache file".into()))??;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 5 || parts[0] != "nielsen-cache" || parts[1] != "v1" {
            return Err(Error::CacheFormat(format!("bad header {header:?}")));
        }
        let kind: GroupKind = parts[2].parse()?;
        let b: usize = parts[3]
            .parse()
            .map_err(|_| Error::CacheFormat(format!("bad b in header {header:?}")))?;
        let count: usize = parts[4]
            .parse()
            .map_err(|_| Error::CacheFormat(format!("bad count in header {header:?}")))?;
        let table = build_group(kind)?;
        let mut representatives = Vec::with_capacity(count);
        let mut index = HashMap::with_capacity(count);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let entries: Vec<u16> = line
                .split_whitespace()
                .map(|w| {
                    w.parse()
                        .map_err(|_| Error::CacheFormat(format!("bad entry {w:?}")))
                })
                .collect::<Result<_, _>>()?;
            if entries.len() != b {
                return Err(Error::CacheFormat(format!(
                    "tuple of length {} in a b={b} cache",
                    entries.len()
                )));
            }
            let tuple = NielsenTuple::new(&table, entries)
                .map_err(|e| Error::CacheFormat(format!("invalid cached tuple: {e}")))?;
            if canonicalize(&table, &tuple) != tuple {
                return Err(Error::CacheFormat("cached tuple is not canonical".into()));
            }
            if index.insert(tuple.entries.clone(), representatives.len()).is_some() {
                return Err(Error::CacheFormat("duplicate cached tuple".into()));
            }
            representatives.push(tuple);
        }
        if representatives.len() != count {
            return Err(Error::CacheFormat(format!(
                "header promises {count} tuples, found {}",
                representatives.len()
            )));
        }
        Ok(ClassSet {
            kind,
            b,
            representatives,
            index,
        })
    }
}

fn thread_count() -> usize {
    match std::env::var("HMLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(n) if n >= 1 => n,
        _ => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8),
    }
}

fn enumerate_exhaustive(table: &GroupTable, b: usize) -> HashSet<Vec<u16>> {
    let adm = table.admissible();
    let shards = thread_count().min(adm.len()).max(1);
    let scan = |first_entries: &[u16]| -> HashSet<Vec<u16>> {
        let mut found: HashSet<Vec<u16>> = HashSet::new();
        let mut generating: HashMap<Vec<u16>, bool> = HashMap::new();
        let a = adm.len();
        let mut entries = vec![0u16; b];
        for &first in first_entries {
            entries[0] = first;
            // odometer over the b-2 middle digits; last entry forced
            let mut digits = vec![0usize; b - 2];
            loop {
                let mut prod = first;
                for (k, &d) in digits.iter().enumerate() {
                    entries[k + 1] = adm[d];
                    prod = table.m(prod, adm[d]);
                }
                let last = table.inv(prod);
                if table.is_admissible(last) {
                    entries[b - 1] = last;
                    let canon = canonicalize_raw(table, &entries);
                    if !found.contains(&canon) {
                        let gens = generating
                            .entry(canon.clone())
                            .or_insert_with(|| table.generates(&canon));
                        if *gens {
                            found.insert(canon);
                        }
                    }
                }
                let mut pos = b - 2;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < a {
                        break;
                    }
                    digits[pos] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
        found
    };
    if shards <= 1 {
        return scan(adm);
    }
    let chunks: Vec<&[u16]> = adm.chunks(adm.len().div_ceil(shards)).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = chunks.into_iter().map(|c| s.spawn(move || scan(c))).collect();
        let mut all = HashSet::new();
        for h in handles {
            all.extend(h.join().expect("enumeration shard panicked"));
        }
        all
    })
}

fn enumerate_orbit_bfs(table: &GroupTable, b: usize) -> Result<HashSet<Vec<u16>>, Error> {
    let seed = seed_tuple(table, b)?;
    let start = canonicalize(table, &seed).entries;
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut scratch = vec![0u16; b];
    while let Some(t) = queue.pop() {
        for i in 1..b {
            for dir in [MoveDirection::Forward, MoveDirection::Inverse] {
                scratch.copy_from_slice(&t);
                hurwitz_move_raw(table, &mut scratch, i, dir);
                let canon = canonicalize_raw(table, &scratch);
                if !seen.contains(&canon) {
                    seen.insert(canon.clone());
                    queue.push(canon);
                }
            }
        }
    }
    Ok(seen)
}

pub fn enumerate_classes(
    table: &GroupTable,
    b: usize,
    method: EnumMethod,
) -> Result<ClassSet, Error> {
    if b < 4 || b % 2 != 0 {
        return Err(Error::InvalidParameter(format!("b must be even and >= 4, got {b}")));
    }
    let set = match method {
        EnumMethod::Exhaustive => enumerate_exhaustive(table, b),
        EnumMethod::OrbitBfs => enumerate_orbit_bfs(table, b)?,
    };
    Ok(ClassSet::from_canonical_set(table.kind(), b, set))
}

/// Entrywise projection of each class of `cs` through the S3 quotient,
/// located in `omega`.  Returns the class map Sigma -> Omega.
pub fn project_to_s3(
    table: &GroupTable,
    cs: &ClassSet,
    sym3_table: &GroupTable,
    omega: &ClassSet,
) -> Result<Vec<usize>, Error> {
    if omega.kind() != GroupKind::Sym3 || omega.b() != cs.b() {
        return Err(Error::InvalidParameter(
            "projection target must be a sym3 class set with the same b".into(),
        ));
    }
    cs.representatives()
        .iter()
        .map(|rep| {
            let image: Vec<u16> = rep.entries().iter().map(|&e| table.s3_image(e)).collect();
            let canon = canonicalize_raw(sym3_table, &image);
            omega.index_of_canonical(&canon).ok_or_else(|| {
                Error::Internal("projected tuple missing from the sym3 class set".into())
            })
        })
        .collect()
}
