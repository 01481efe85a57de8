//! General knot diagrams from Gauss codes, the knot determinant, and
//! exhaustive play on arbitrary shadows.

use std::collections::BTreeSet;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::boolean::{u_values, BoolClass};
use crate::error::{Error, Result};
use crate::scoring::{SGame, ScoreOutcome};
use crate::text::Cursor;

/// The eight-crossing shadow with no monogon or bigon faces, traced as the
/// closure of the three-strand braid `(s1 s2)^4`.
pub const PETALS_GAUSS: &str = "1 2 4 5 7 8 2 3 5 6 8 1 3 4 6 7";

/// A closed curve with crossings. `word` lists crossing indices along the
/// curve; `over_first[c]` says whether the first pass through `c` is the
/// over-strand, `None` while unresolved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    word: Vec<usize>,
    over_first: Vec<Option<bool>>,
}

/// A maximal over-run, from one underpass to the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingArcs {
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
}

pub fn parse_gauss(code: &str) -> Result<Diagram> {
    let mut c = Cursor::new(code);
    let mut labels: Vec<u64> = Vec::new();
    let mut word = Vec::new();
    let mut marks: Vec<Option<bool>> = Vec::new();
    loop {
        c.skip_ws();
        c.eat(',');
        c.skip_ws();
        if c.at_end() {
            break;
        }
        let start = c.pos();
        let mark = match c.peek() {
            Some('O' | 'o') => {
                c.bump();
                Some(true)
            }
            Some('U' | 'u') => {
                c.bump();
                Some(false)
            }
            _ => None,
        };
        let digits = c.take_while(|ch| ch.is_ascii_digit());
        if digits.is_empty() {
            return Err(Error::parse(start, "expected a crossing label"));
        }
        let label: u64 = digits
            .parse()
            .map_err(|_| Error::parse(start, "label out of range"))?;
        if matches!(c.peek(), Some('+' | '-')) {
            c.bump();
        }
        let ix = match labels.iter().position(|&l| l == label) {
            Some(ix) => ix,
            None => {
                labels.push(label);
                labels.len() - 1
            }
        };
        word.push(ix);
        marks.push(mark);
    }
    if word.is_empty() {
        return Err(Error::parse(0, "empty Gauss code"));
    }
    let n = labels.len();
    let mut visits: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (p, &x) in word.iter().enumerate() {
        visits[x].push(p);
    }
    let mut over_first = Vec::with_capacity(n);
    for (x, ps) in visits.iter().enumerate() {
        if ps.len() != 2 {
            return Err(Error::Malformed(format!(
                "crossing {} is visited {} times",
                labels[x],
                ps.len()
            )));
        }
        over_first.push(match (marks[ps[0]], marks[ps[1]]) {
            (None, None) => None,
            (Some(a), Some(b)) if a != b => Some(a),
            _ => {
                return Err(Error::Malformed(format!(
                    "crossing {} needs one over and one under pass",
                    labels[x]
                )))
            }
        });
    }
    Ok(Diagram { word, over_first })
}

impl Diagram {
    pub fn petals() -> Diagram {
        parse_gauss(PETALS_GAUSS).expect("petals code is well formed")
    }

    pub fn crossings(&self) -> usize {
        self.over_first.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn over_first(&self) -> &[Option<bool>] {
        &self.over_first
    }

    pub fn unresolved(&self) -> usize {
        self.over_first.iter().filter(|o| o.is_none()).count()
    }

    pub fn is_resolved(&self) -> bool {
        self.unresolved() == 0
    }

    pub fn shadow(&self) -> Diagram {
        Diagram {
            word: self.word.clone(),
            over_first: vec![None; self.crossings()],
        }
    }

    pub fn with_choice(&self, crossing: usize, over_first: bool) -> Diagram {
        let mut d = self.clone();
        d.over_first[crossing] = Some(over_first);
        d
    }

    /// Resolution number `bits` of the unresolved crossings, in crossing order.
    pub fn resolve(&self, bits: u64) -> Diagram {
        let mut d = self.clone();
        for (k, o) in d.over_first.iter_mut().filter(|o| o.is_none()).enumerate() {
            *o = Some(bits >> k & 1 == 0);
        }
        d
    }

    pub fn resolutions(&self) -> Vec<Diagram> {
        (0..1u64 << self.unresolved()).map(|b| self.resolve(b)).collect()
    }

    /// Whether pass `p` of the word is an overpass. Panics while unresolved.
    pub fn is_over(&self, p: usize) -> bool {
        let x = self.word[p];
        let first = self.word.iter().position(|&y| y == x).unwrap() == p;
        self.over_first[x].expect("resolved") == first
    }

    /// Arcs in curve order, and for each crossing its over-arc and the two
    /// arcs ending at it.
    pub fn arcs(&self) -> Result<(Vec<Arc>, Vec<CrossingArcs>)> {
        if !self.is_resolved() {
            return Err(Error::Domain("diagram has unresolved crossings".into()));
        }
        let len = self.word.len();
        let unders: Vec<usize> = (0..len).filter(|&p| !self.is_over(p)).collect();
        let n = unders.len();
        if n != self.crossings() {
            return Err(Error::Link);
        }
        let arcs: Vec<Arc> = (0..n)
            .map(|j| Arc {
                start: unders[j],
                end: unders[(j + 1) % n],
            })
            .collect();
        let arc_of = |p: usize| match unders.iter().rposition(|&u| u < p) {
            Some(j) => j,
            None => n - 1,
        };
        let mut roles = vec![
            CrossingArcs {
                over: 0,
                incoming: 0,
                outgoing: 0,
            };
            n
        ];
        for p in 0..len {
            let x = self.word[p];
            if self.is_over(p) {
                roles[x].over = arc_of(p);
            } else {
                let j = unders.iter().position(|&u| u == p).unwrap();
                roles[x].incoming = (j + n - 1) % n;
                roles[x].outgoing = j;
            }
        }
        Ok((arcs, roles))
    }

    /// `M[i][j]`: 2 where arc `i` passes over crossing `j`, −1 for each end of
    /// arc `i` at crossing `j`.
    pub fn matrix(&self) -> Result<Vec<Vec<i64>>> {
        let (arcs, roles) = self.arcs()?;
        let n = arcs.len();
        let mut m = vec![vec![0i64; n]; n];
        for (j, r) in roles.iter().enumerate() {
            m[r.over][j] += 2;
            m[r.incoming][j] -= 1;
            m[r.outgoing][j] -= 1;
        }
        Ok(m)
    }

    /// `|det|` of the matrix with row `row` and column `col` deleted.
    pub fn determinant_minor(&self, row: usize, col: usize) -> Result<u64> {
        let m = self.matrix()?;
        let minor: Vec<Vec<i64>> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        Ok(bareiss(minor).unsigned_abs() as u64)
    }

    pub fn determinant(&self) -> Result<u64> {
        let n = self.crossings();
        self.determinant_minor(n - 1, n - 1)
    }
}

/// Fraction-free Gaussian elimination.
pub fn bareiss(mut m: Vec<Vec<i64>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.drain(..).map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.crossings()];
        for (p, &x) in self.word.iter().enumerate() {
            if p > 0 {
                f.write_str(" ")?;
            }
            let first = !seen[x];
            seen[x] = true;
            match self.over_first[x] {
                None => {}
                Some(o) => f.write_str(if o == first { "O" } else { "U" })?,
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

/// Every subposition of play on a diagram, keyed by the per-crossing state
/// (0 unresolved, 1 first pass over, 2 second pass over).
pub struct GenericGame {
    pub root: SGame,
    pub positions: FxHashMap<Vec<u8>, SGame>,
}

/// Exhaustive game tree; `is_unknot` decides each full resolution.
pub fn generic_value(d: &Diagram, is_unknot: &dyn Fn(&Diagram) -> bool) -> GenericGame {
    let state: Vec<u8> = d
        .over_first
        .iter()
        .map(|o| match o {
            None => 0,
            Some(true) => 1,
            Some(false) => 2,
        })
        .collect();
    let mut positions = FxHashMap::default();
    let root = generic_rec(d, &state, is_unknot, &mut positions);
    GenericGame { root, positions }
}

fn generic_rec(
    d: &Diagram,
    state: &[u8],
    is_unknot: &dyn Fn(&Diagram) -> bool,
    memo: &mut FxHashMap<Vec<u8>, SGame>,
) -> SGame {
    if let Some(g) = memo.get(state) {
        return *g;
    }
    let g = if state.iter().all(|&s| s != 0) {
        let resolved = Diagram {
            word: d.word.clone(),
            over_first: state.iter().map(|&s| Some(s == 1)).collect(),
        };
        SGame::leaf(i64::from(!is_unknot(&resolved)))
    } else {
        let mut options = Vec::new();
        let mut next = state.to_vec();
        for c in 0..state.len() {
            if state[c] == 0 {
                for s in [1, 2] {
                    next[c] = s;
                    options.push(generic_rec(d, &next, is_unknot, memo));
                }
                next[c] = 0;
            }
        }
        SGame::node(options.clone(), options)
    };
    memo.insert(state.to_vec(), g);
    g
}

pub fn solve_generic(
    d: &Diagram,
    is_unknot: &dyn Fn(&Diagram) -> bool,
) -> Result<(ScoreOutcome, BoolClass)> {
    let g = generic_value(d, is_unknot).root;
    Ok((g.outcomes(), u_values(g)?))
}

/// Unknot test by determinant, sound for the petals shadow.
pub fn determinant_is_one(d: &Diagram) -> bool {
    d.determinant().map(|x| x == 1).unwrap_or(false)
}

/// Position maps `p -> r + s p (mod 2n)` that carry the word onto itself
/// up to relabelling crossings.
pub fn word_symmetries(d: &Diagram) -> Vec<Vec<usize>> {
    let len = d.word.len();
    let mut out = Vec::new();
    for r in 0..len {
        for reflect in [false, true] {
            let map: Vec<usize> = (0..len)
                .map(|p| if reflect { (r + len - p) % len } else { (r + p) % len })
                .collect();
            let mut relabel: Vec<Option<usize>> = vec![None; d.crossings()];
            let ok = (0..len).all(|p| {
                let (x, y) = (d.word[p], d.word[map[p]]);
                match relabel[x] {
                    Some(z) => z == y,
                    None => {
                        relabel[x] = Some(y);
                        true
                    }
                }
            });
            let bijective = relabel.iter().flatten().collect::<BTreeSet<_>>().len() == d.crossings();
            if ok && bijective {
                out.push(map);
            }
        }
    }
    out
}

/// Resolutions grouped into classes under the word symmetries and mirroring.
pub fn symmetry_classes(d: &Diagram, resolutions: &[Diagram]) -> Vec<Vec<Diagram>> {
    let syms = word_symmetries(d);
    let overs = |e: &Diagram| -> Vec<bool> { (0..e.word.len()).map(|p| e.is_over(p)).collect() };
    let key = |e: &Diagram| -> Vec<bool> {
        let o = overs(e);
        let mut best: Option<Vec<bool>> = None;
        for map in &syms {
            let mut img = vec![false; o.len()];
            for (p, &q) in map.iter().enumerate() {
                img[q] = o[p];
            }
            let mirrored: Vec<bool> = img.iter().map(|b| !b).collect();
            for cand in [img, mirrored] {
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    };
    let mut groups: Vec<(Vec<bool>, Vec<Diagram>)> = Vec::new();
    for e in resolutions {
        let k = key(e);
        match groups.iter_mut().find(|(g, _)| *g == k) {
            Some((_, v)) => v.push(e.clone()),
            None => groups.push((k, vec![e.clone()])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}
