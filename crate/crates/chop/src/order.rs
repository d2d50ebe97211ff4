use std::cell::RefCell;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use hst_pocset::Pocset;
use serde::Serialize;

use crate::error::ChopError;

/// An oriented halfspace of the splitting tree window: edge index plus
/// orientation. `positive` is the translate of the chopped halfspace for
/// edges in its orbit, and an arbitrary fixed side for the others.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Half {
    pub edge: usize,
    pub positive: bool,
}

impl Half {
    pub fn star(self) -> Half {
        Half { edge: self.edge, positive: !self.positive }
    }
}

/// What the order on the refined pocset needs to know about a finite
/// window: the tree of the splitting and the class data of the chopped
/// halfspace, transported to every edge of its orbit.
pub trait ChopGeometry {
    fn edge_count(&self) -> usize;

    /// Whether the edge lies in the orbit of the chopped edge.
    fn in_orbit(&self, edge: usize) -> bool;

    /// Strict inclusion of halfspaces.
    fn nested(&self, a: Half, b: Half) -> bool;

    /// The class, in the frame of `frame`, containing the wall of `other`;
    /// the wall of `other` lies in the positive halfspace of `frame`.
    fn class_of_edge(&self, frame: usize, other: usize) -> Result<usize, ChopError>;

    /// The deep classes; every frame uses the same ids.
    fn deep_classes(&self) -> Vec<usize>;

    fn edge_label(&self, edge: usize) -> String {
        format!("e{edge}")
    }
}

/// An element of the refined pocset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PElement {
    /// A halfspace whose wall is not in the orbit of the chopped wall.
    Plain(Half),
    /// A class inside the positive halfspace of an orbit edge.
    ClassSide { edge: usize, class: usize },
    /// Its complement, paired with the negative halfspace.
    CoClassSide { edge: usize, class: usize },
}

impl PElement {
    pub fn star(self) -> PElement {
        match self {
            PElement::Plain(h) => PElement::Plain(h.star()),
            PElement::ClassSide { edge, class } => PElement::CoClassSide { edge, class },
            PElement::CoClassSide { edge, class } => PElement::ClassSide { edge, class },
        }
    }

    pub fn edge(self) -> usize {
        match self {
            PElement::Plain(h) => h.edge,
            PElement::ClassSide { edge, .. } | PElement::CoClassSide { edge, .. } => edge,
        }
    }

    /// The halfspace of the splitting tree this element is paired with.
    pub fn half(self) -> Half {
        match self {
            PElement::Plain(h) => h,
            PElement::ClassSide { edge, .. } => Half { edge, positive: true },
            PElement::CoClassSide { edge, .. } => Half { edge, positive: false },
        }
    }

    pub fn name<G: ChopGeometry + ?Sized>(self, geo: &G) -> String {
        match self {
            PElement::Plain(h) => format!("{}{}", geo.edge_label(h.edge), if h.positive { "+" } else { "-" }),
            PElement::ClassSide { edge, class } => format!("{}[{class}]", geo.edge_label(edge)),
            PElement::CoClassSide { edge, class } => format!("{}[{class}]*", geo.edge_label(edge)),
        }
    }
}

/// Which of the four nesting patterns holds for distinct `(p, q)`:
/// `Below`: `p ≤ q`; `Disjoint`: `p ≤ q*`; `Covering`: `p* ≤ q`;
/// `Above`: `q ≤ p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Row {
    Equal,
    Below,
    Disjoint,
    Covering,
    Above,
}

impl Row {
    fn transpose(self) -> Row {
        match self {
            Row::Below => Row::Above,
            Row::Above => Row::Below,
            r => r,
        }
    }

    /// From the row of `(p*, q)` to the row of `(p, q)`.
    fn star_first(self) -> Row {
        match self {
            Row::Below => Row::Covering,
            Row::Covering => Row::Below,
            Row::Disjoint => Row::Above,
            Row::Above => Row::Disjoint,
            Row::Equal => Row::Disjoint,
        }
    }

    /// From the row of `(p, q*)` to the row of `(p, q)`.
    fn star_second(self) -> Row {
        match self {
            Row::Below => Row::Disjoint,
            Row::Disjoint => Row::Below,
            Row::Covering => Row::Above,
            Row::Above => Row::Covering,
            Row::Equal => Row::Disjoint,
        }
    }
}

/// Computes the order of the refined pocset from tree nesting and class
/// data alone. Class lookups are cached.
pub struct OrderEngine<'a, G: ChopGeometry + ?Sized> {
    geo: &'a G,
    deep: Vec<usize>,
    cache: RefCell<HashMap<(usize, usize), usize>>,
}

impl<'a, G: ChopGeometry + ?Sized> OrderEngine<'a, G> {
    pub fn new(geo: &'a G) -> Self {
        OrderEngine { geo, deep: geo.deep_classes(), cache: RefCell::new(HashMap::new()) }
    }

    fn class_of_edge(&self, frame: usize, other: usize) -> Result<usize, ChopError> {
        if let Some(&c) = self.cache.borrow().get(&(frame, other)) {
            return Ok(c);
        }
        let c = self.geo.class_of_edge(frame, other)?;
        if !self.deep.contains(&c) {
            return Err(ChopError::Window(format!(
                "class {c} holding the wall of {} in the frame of {} is not deep",
                self.geo.edge_label(other),
                self.geo.edge_label(frame)
            )));
        }
        self.cache.borrow_mut().insert((frame, other), c);
        Ok(c)
    }

    fn tree_row(&self, a: Half, b: Half) -> Result<Row, ChopError> {
        if a == b {
            return Ok(Row::Equal);
        }
        if a == b.star() {
            return Ok(Row::Disjoint);
        }
        let g = self.geo;
        let rows = [
            (g.nested(a, b), Row::Below),
            (g.nested(a, b.star()), Row::Disjoint),
            (g.nested(a.star(), b), Row::Covering),
            (g.nested(b, a), Row::Above),
        ];
        let hits: Vec<Row> = rows.iter().filter(|(h, _)| *h).map(|&(_, r)| r).collect();
        match hits.as_slice() {
            [r] => Ok(*r),
            _ => Err(ChopError::Structure(format!(
                "halfspaces {a:?} and {b:?} of the tree window are not in exactly one nesting pattern"
            ))),
        }
    }

    pub fn row(&self, p: PElement, q: PElement) -> Result<Row, ChopError> {
        if p == q {
            return Ok(Row::Equal);
        }
        match (p, q) {
            (PElement::Plain(a), PElement::Plain(b)) => self.tree_row(a, b),
            (PElement::Plain(_), _) => Ok(self.row(q, p)?.transpose()),
            (PElement::CoClassSide { .. }, _) => Ok(self.row(p.star(), q)?.star_first()),
            (PElement::ClassSide { edge, class }, _) => self.row_from_class(edge, class, q),
        }
    }

    /// Row of `([x], e+)` against `q`.
    fn row_from_class(&self, e: usize, x: usize, q: PElement) -> Result<Row, ChopError> {
        let f = q.edge();
        if f == e {
            return Ok(match q {
                PElement::ClassSide { class, .. } if class != x => Row::Disjoint,
                PElement::CoClassSide { class, .. } if class == x => Row::Disjoint,
                PElement::CoClassSide { .. } => Row::Below,
                _ => {
                    return Err(ChopError::Structure(format!(
                        "edge {} carries both a plain and a class element",
                        self.geo.edge_label(e)
                    )))
                }
            });
        }
        let plus = Half { edge: e, positive: true };
        let qh = q.half();
        if self.geo.nested(qh, plus) {
            self.inside(e, x, q)
        } else if self.geo.nested(qh.star(), plus) {
            Ok(self.inside(e, x, q.star())?.star_second())
        } else if self.geo.nested(plus, qh) {
            self.outside(e, x, q)
        } else if self.geo.nested(plus, qh.star()) {
            Ok(self.outside(e, x, q.star())?.star_second())
        } else {
            Err(ChopError::Structure(format!(
                "edges {} and {} are not nested",
                self.geo.edge_label(e),
                self.geo.edge_label(f)
            )))
        }
    }

    /// `q`'s halfspace lies strictly inside `e+`.
    fn inside(&self, e: usize, x: usize, q: PElement) -> Result<Row, ChopError> {
        let y = self.class_of_edge(e, q.edge())?;
        let same = self.same_class(e, q)?;
        if y == x {
            return Ok(same);
        }
        match same {
            Row::Covering => Ok(Row::Below),
            Row::Above => Ok(Row::Disjoint),
            r => Err(ChopError::Structure(format!(
                "unexpected pattern {r:?} between {} and the class holding it",
                q.name(self.geo)
            ))),
        }
    }

    /// Row of `([y], e+)` against `q`, where `[y]` holds `q`'s halfspace.
    fn same_class(&self, e: usize, q: PElement) -> Result<Row, ChopError> {
        match q {
            PElement::Plain(_) | PElement::ClassSide { .. } => Ok(Row::Above),
            PElement::CoClassSide { edge, class } => {
                let back = self.class_of_edge(edge, e)?;
                Ok(if class == back { Row::Above } else { Row::Covering })
            }
        }
    }

    /// `e+` lies strictly inside `q`'s halfspace.
    fn outside(&self, e: usize, x: usize, q: PElement) -> Result<Row, ChopError> {
        match q {
            PElement::Plain(_) | PElement::CoClassSide { .. } => Ok(Row::Below),
            PElement::ClassSide { edge, class } => {
                let p = PElement::ClassSide { edge: e, class: x };
                Ok(self.inside(edge, class, p)?.transpose())
            }
        }
    }

    pub fn leq(&self, p: PElement, q: PElement) -> Result<bool, ChopError> {
        Ok(matches!(self.row(p, q)?, Row::Equal | Row::Below))
    }
}

/// The refined pocset on a window: elements, their order and checks.
#[derive(Clone, Debug, Serialize)]
pub struct RefinedPocset {
    pub elements: Vec<PElement>,
    pub names: Vec<String>,
    #[serde(skip)]
    pub pocset: Pocset,
    /// Strict order pairs computed directly (before any closure).
    pub strict_pairs: usize,
    /// Distinct pairs checked for the four-pattern property.
    pub pairs_checked: usize,
}

impl RefinedPocset {
    pub fn index_of(&self, e: PElement) -> Option<usize> {
        self.elements.iter().position(|&x| x == e)
    }
}

/// Lists the elements of the window: plain halfspaces for edges outside the
/// chopped orbit, and a class pair per deep class for edges inside it.
pub fn window_elements<G: ChopGeometry + ?Sized>(geo: &G) -> Vec<PElement> {
    let deep = geo.deep_classes();
    let mut out = Vec::new();
    for e in 0..geo.edge_count() {
        if geo.in_orbit(e) {
            for &c in &deep {
                out.push(PElement::ClassSide { edge: e, class: c });
                out.push(PElement::CoClassSide { edge: e, class: c });
            }
        } else {
            out.push(PElement::Plain(Half { edge: e, positive: true }));
            out.push(PElement::Plain(Half { edge: e, positive: false }));
        }
    }
    out
}

/// Builds the refined pocset of the window. Every pair of elements that are
/// neither equal nor complementary must satisfy
/// exactly one of the four nesting patterns (both of its inequalities, and
/// none of the other six); the relation must be a partial order. Failures
/// are reported with the offending elements.
pub fn build_refined_pocset<G: ChopGeometry + ?Sized>(geo: &G) -> Result<RefinedPocset, ChopError> {
    let elements = window_elements(geo);
    let n = elements.len();
    let engine = OrderEngine::new(geo);
    let names: Vec<String> = elements.iter().map(|e| e.name(geo)).collect();
    let index: HashMap<PElement, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let star: Vec<usize> = elements.iter().map(|e| index[&e.star()]).collect();

    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..n {
            if engine.leq(elements[i], elements[j])? {
                row.insert(j);
            }
        }
    }
    let le = Leq(rows);
    let mut pairs_checked = 0;
    for i in 0..n {
        for j in 0..n {
            if i == j || j == star[i] {
                continue;
            }
            pairs_checked += 1;
            let (si, sj) = (star[i], star[j]);
            let rows = [
                [le.get(i, j), le.get(sj, si)],
                [le.get(i, sj), le.get(j, si)],
                [le.get(si, j), le.get(sj, i)],
                [le.get(si, sj), le.get(j, i)],
            ];
            let full: Vec<usize> = (0..4).filter(|&r| rows[r][0] && rows[r][1]).collect();
            let count: usize = rows.iter().flatten().filter(|&&b| b).count();
            if full.len() != 1 || count != 2 {
                return Err(ChopError::Structure(format!(
                    "{} and {}: inequalities {rows:?} do not form exactly one pattern",
                    names[i], names[j]
                )));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le.get(i, j) && le.get(j, i) {
                return Err(ChopError::Structure(format!("{} and {} are mutually below", names[i], names[j])));
            }
        }
    }
    if let Some((a, b, c)) = le.transitivity_failure() {
        return Err(ChopError::Structure(format!(
            "{} ≤ {} ≤ {} but not {} ≤ {}",
            names[a], names[b], names[c], names[a], names[c]
        )));
    }
    let less: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j && le.get(i, j)).collect();
    let strict_pairs = less.len();
    let pocset = Pocset::new(names.clone(), star, &less, true)?;
    if !pocset.transverse_pairs().is_empty() {
        return Err(ChopError::Structure("refined pocset has transverse pairs".into()));
    }
    Ok(RefinedPocset { elements, names, pocset, strict_pairs, pairs_checked })
}

struct Leq(Vec<FixedBitSet>);

impl Leq {
    fn get(&self, i: usize, j: usize) -> bool {
        self.0[i].contains(j)
    }

    /// Some `(a, b, c)` with `a ≤ b ≤ c` but not `a ≤ c`.
    fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for (a, ra) in self.0.iter().enumerate() {
            for b in ra.ones().filter(|&b| b != a) {
                if let Some(c) = self.0[b].difference(ra).next() {
                    return Some((a, b, c));
                }
            }
        }
        None
    }
}
