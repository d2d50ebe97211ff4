use std::collections::HashMap;

use hst_graph::{EndReport, VertexId};
use hst_groups::{Elem, Letter, MarkedGroup};
use hst_splitting::{halfspace_window, GElem, HalfSide, HalfspaceBall, Splitting, SplittingDecl};
use serde::Serialize;

use crate::classes::{build_edge_tree, EdgeTree, TranslationWitness, WindowAction};
use crate::cut::{find_halfspace_cut, CutSearch, HalfspaceCut};
use crate::error::ChopError;
use crate::order::{build_refined_pocset, OrderEngine};
use crate::tprime::{check_equivariance, hyperbolic_witness, refine_tree, HyperbolicWitness};
use crate::window::{point_index, tree_window, SplitGeometry, TreeWindowSummary, WallAction};

pub const REPORT_FORMAT: &str = "hst-chop/1";

/// Group elements tried when checking that the refined order is invariant.
pub const EQUIVARIANCE_SAMPLE: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct ChopParams {
    /// Inner radius of the end count.
    pub inner: u32,
    /// Radius of the halfspace windows.
    pub radius: u32,
    /// Edge hops of the tree window.
    pub tree_radius: usize,
    /// Length bound for coset representatives at tree vertices.
    pub rep_radius: usize,
    pub budget: Option<usize>,
    pub max_rounds: usize,
    /// Include DOT renderings of both trees in round reports.
    pub dot: bool,
}

impl Default for ChopParams {
    fn default() -> Self {
        ChopParams {
            inner: 1,
            radius: 4,
            tree_radius: 1,
            rep_radius: 1,
            budget: None,
            max_rounds: 3,
            dot: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfspaceProbe {
    pub side: HalfSide,
    pub points: usize,
    pub wall_points: usize,
    pub connected: bool,
    pub ends: EndReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl PropertyCheck {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        PropertyCheck { name: name.to_string(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CutSummary {
    pub size: u32,
    pub wall_weight: u32,
    pub side_points: usize,
    pub boundary: Vec<(String, String)>,
    pub anomalies: Vec<String>,
    pub min_wall_weight: u32,
    pub min_boundary_at_min_wall: u32,
    pub multiplicity: u32,
    pub modified_size: u32,
    pub predicted_modified_size: u32,
    /// Earlier candidates whose translates crossed.
    pub rejected: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeTreeSummary {
    pub translates: usize,
    pub skipped: usize,
    pub vertices: usize,
    pub edges: usize,
    pub classes: usize,
    pub deep_classes: usize,
    pub base_class: usize,
    pub base_class_degree: usize,
    pub boundary_stabilizer: Vec<String>,
    pub witness: Option<TranslationWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedSummary {
    pub tree_window: TreeWindowSummary,
    pub elements: usize,
    pub strict_pairs: usize,
    /// Pairs of window elements that cross; zero for a nested system.
    pub transverse_pairs: usize,
    pub vertices: usize,
    pub edges: usize,
    pub collapse_hits: usize,
    pub hyperbolic: Option<HyperbolicWitness>,
    /// Edge-group generators fixing the class of the base point, which
    /// stabilize the refined edge over the base edge.
    pub base_class_fixed_by: Vec<String>,
}

/// A splitting in the same notation the scenario files use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingSummary {
    pub name: String,
    pub left: String,
    pub right: Option<String>,
    pub edge: String,
    pub left_images: Vec<String>,
    pub right_images: Vec<String>,
    pub stable: Option<String>,
}

impl SplittingSummary {
    pub fn of(split: &Splitting) -> Self {
        let fmt = |g: &MarkedGroup, xs: &[Elem]| xs.iter().map(|x| g.format(x)).collect();
        match split.decl() {
            SplittingDecl::Amalgam { left, right, edge, left_images, right_images } => SplittingSummary {
                name: split.name().to_string(),
                left: left.describe(),
                right: Some(right.describe()),
                edge: edge.describe(),
                left_images: fmt(left, left_images),
                right_images: fmt(right, right_images),
                stable: None,
            },
            SplittingDecl::Hnn { base, edge, domain_images, image_images, stable } => SplittingSummary {
                name: split.name().to_string(),
                left: base.describe(),
                right: None,
                edge: edge.describe(),
                left_images: fmt(base, domain_images),
                right_images: fmt(base, image_images),
                stable: Some(stable.clone()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RoundOutcome {
    /// Every halfspace window is one-ended.
    OneEnded,
    /// The chop produced a new splitting.
    Chopped { next: SplittingSummary },
    /// The chop was computed but no next splitting could be formed.
    Stopped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundReport {
    pub round: usize,
    pub splitting: String,
    pub probes: Vec<HalfspaceProbe>,
    pub chopped: Option<HalfSide>,
    pub cut: Option<CutSummary>,
    pub edge_tree: Option<EdgeTreeSummary>,
    pub refined: Option<RefinedSummary>,
    pub checks: Vec<PropertyCheck>,
    pub edge_tree_dot: Option<String>,
    pub refined_dot: Option<String>,
    pub outcome: RoundOutcome,
}

impl RoundReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChopReport {
    pub format: &'static str,
    pub input: String,
    pub params: ChopParams,
    pub rounds: Vec<RoundReport>,
    /// The last round found only one-ended halfspaces.
    pub terminated: bool,
    pub final_splitting: SplittingSummary,
}

impl ChopReport {
    /// Rounds that actually chopped a halfspace.
    pub fn chop_count(&self) -> usize {
        self.rounds.iter().filter(|r| r.chopped.is_some()).count()
    }
}

fn probe(split: &Splitting, params: &ChopParams) -> Result<Vec<(HalfspaceBall, HalfspaceProbe)>, ChopError> {
    [HalfSide::Left, HalfSide::Right]
        .into_iter()
        .map(|side| {
            let ball = halfspace_window(split, &split.identity(), side, params.radius, params.budget)?;
            let ends = ball.ends(params.inner, None)?;
            let p = HalfspaceProbe {
                side,
                points: ball.points.len(),
                wall_points: ball.wall.len(),
                connected: ball.connected,
                ends,
            };
            Ok((ball, p))
        })
        .collect()
}

type Chosen<'a> = (usize, EdgeTree, WallAction<'a>, Vec<String>);

/// Tries the candidate cuts best first until one has nested translates.
fn choose_cut<'a>(
    split: &'a Splitting,
    ball: &'a HalfspaceBall,
    index: &'a HashMap<GElem, VertexId>,
    search: &CutSearch,
    budget: Option<usize>,
) -> Result<Chosen<'a>, ChopError> {
    let mut rejected = Vec::new();
    for (i, cand) in search.candidates.iter().enumerate() {
        let anchors: Vec<VertexId> = cand.cut.boundary.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        let action = WallAction::covering(split, ball, index, &anchors)?;
        match build_edge_tree(&ball.graph, cand, &action, budget) {
            Ok(t) => return Ok((i, t, action, rejected)),
            Err(ChopError::NotNested(m)) => rejected.push(m),
            Err(e) => return Err(e),
        }
    }
    Err(ChopError::NotNested(format!(
        "none of the {} candidate cuts has nested translates",
        search.candidates.len()
    )))
}

fn cut_summary(cut: &HalfspaceCut, search: &CutSearch, rejected: Vec<String>) -> CutSummary {
    CutSummary {
        size: cut.size,
        wall_weight: cut.wall_weight,
        side_points: cut.cut.side.len(),
        boundary: cut.boundary_labels.clone(),
        anomalies: cut.anomalies.clone(),
        min_wall_weight: search.min_wall_weight,
        min_boundary_at_min_wall: search.min_boundary_at_min_wall,
        multiplicity: search.multiplicity,
        modified_size: search.modified_size,
        predicted_modified_size: search.predicted_modified_size,
        rejected,
    }
}

/// Runs one round on `split`.
pub fn chop_round(split: &Splitting, round: usize, params: &ChopParams) -> Result<(RoundReport, Option<Splitting>), ChopError> {
    let probed = probe(split, params)?;
    let probes: Vec<HalfspaceProbe> = probed.iter().map(|(_, p)| p.clone()).collect();
    let mut report = RoundReport {
        round,
        splitting: split.name().to_string(),
        probes,
        chopped: None,
        cut: None,
        edge_tree: None,
        refined: None,
        checks: Vec::new(),
        edge_tree_dot: None,
        refined_dot: None,
        outcome: RoundOutcome::OneEnded,
    };
    let Some((ball, search)) = probed
        .iter()
        .map(|(ball, _)| Ok((ball, find_halfspace_cut(&ball.graph, params.inner)?)))
        .collect::<Result<Vec<_>, ChopError>>()?
        .into_iter()
        .find_map(|(b, s)| s.map(|s| (b, s)))
    else {
        return Ok((report, None));
    };
    let side = ball.side;
    if split.edge_group().rank() == 0 {
        report.outcome = RoundOutcome::Stopped {
            reason: format!("the {} halfspace is multi-ended but the edge group is already trivial", side.name()),
        };
        return Ok((report, None));
    }
    report.chopped = Some(side);
    let checks = &mut report.checks;

    let index = point_index(ball);
    let (chosen, edge_tree, action, rejected) = choose_cut(split, ball, &index, &search, params.budget)?;
    let cut = &search.candidates[chosen];
    checks.push(PropertyCheck::new("cut sides reach the frontier along the wall", cut.anomalies.is_empty(), cut.anomalies.join("; ")));
    checks.push(PropertyCheck::new(
        "wall-edge multiplicity keeps boundary-minimal cuts wall-minimal",
        search.modified_size == search.predicted_modified_size,
        format!("modified {} predicted {}", search.modified_size, search.predicted_modified_size),
    ));
    report.cut = Some(cut_summary(cut, &search, rejected));

    checks.push(PropertyCheck::new("translates of the cut are nested", true, format!("{} translates", edge_tree.translates.len())));
    checks.push(PropertyCheck::new("edge tree is a tree", edge_tree.tree.is_tree(), ""));
    let base_vertex = index[&split.identity()];
    let base_class = edge_tree.classes.class_of[base_vertex];
    let degrees = edge_tree.tree_degrees();
    report.edge_tree = Some(EdgeTreeSummary {
        translates: edge_tree.translates.len(),
        skipped: edge_tree.skipped,
        vertices: edge_tree.tree.vertices.len(),
        edges: edge_tree.tree.edges.len(),
        classes: edge_tree.classes.classes.len(),
        deep_classes: edge_tree.classes.deep().len(),
        base_class,
        base_class_degree: degrees[edge_tree.classes.classes[base_class].tree_vertex],
        boundary_stabilizer: edge_tree.boundary_stabilizer.clone(),
        witness: edge_tree.witness.clone(),
    });
    checks.push(PropertyCheck::new(
        "the edge tree has a translate nested in another",
        edge_tree.witness.is_some(),
        edge_tree.witness.as_ref().map(|w| format!("{} inside {}", w.inner, w.outer)).unwrap_or_default(),
    ));

    let tree = tree_window(split, side, params.tree_radius, params.rep_radius)?;
    let geo = SplitGeometry::new(split, &tree, ball, &index, &edge_tree.classes);
    let bad_walls = geo.split_walls(2, None, |v| edge_tree.classes.class_of[v])?;
    checks.push(PropertyCheck::new(
        "transported walls lie in single classes",
        bad_walls.is_empty(),
        bad_walls.iter().map(|(f, e)| format!("{e} from {f}")).collect::<Vec<_>>().join(", "),
    ));
    let inside = cut.mask(ball.graph.len());
    let base_edge = tree.index_of(&split.base_edge()).unwrap_or(0);
    let crossing = geo.split_walls(2, Some(base_edge), |v| inside[v])?;
    checks.push(PropertyCheck::new(
        "walls inside the halfspace lie on one side of the cut",
        crossing.is_empty(),
        crossing.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>().join(", "),
    ));
    let built = build_refined_pocset(&geo).and_then(|r| {
        let t = refine_tree(&r, &tree, params.budget)?;
        Ok((r, t))
    });
    let (refined, rt) = match built {
        Ok(x) => x,
        Err(e @ (ChopError::Structure(_) | ChopError::Window(_) | ChopError::Pocset(_))) => {
            checks.push(PropertyCheck::new("refined order has one nesting pattern per pair", false, e.to_string()));
            report.outcome = RoundOutcome::Stopped { reason: e.to_string() };
            return Ok((report, None));
        }
        Err(e) => return Err(e),
    };
    checks.push(PropertyCheck::new(
        "refined order has one nesting pattern per pair",
        true,
        format!("{} pairs", refined.pairs_checked),
    ));
    checks.push(PropertyCheck::new("refined cubing is a tree", rt.is_tree, format!("{} vertices", rt.vertices)));
    checks.push(PropertyCheck::new(
        "refined tree edges carry distinct element pairs",
        rt.repeated_edge_labels == 0,
        "",
    ));
    checks.push(PropertyCheck::new(
        "refined tree collapses onto the tree window",
        rt.collapse_hits == tree.vertices.len(),
        format!("{} of {} vertices hit", rt.collapse_hits, tree.vertices.len()),
    ));
    let mut failures = 0;
    let mut compared = 0;
    let mut moved_by = 0;
    let engine = OrderEngine::new(&geo);
    for d in equivariance_sample(split, &action) {
        let r = check_equivariance(&geo, &engine, &refined, &d)?;
        compared += r.compared;
        failures += r.failures.len();
        moved_by += 1;
    }
    checks.push(PropertyCheck::new(
        "sampled group elements preserve the refined order",
        failures == 0,
        format!("{failures} of {compared} comparisons changed under {moved_by} elements"),
    ));
    let stabilizer: Vec<GElem> = (0..action.len()).map(|g| action.element(g).clone()).collect();
    let hyperbolic = hyperbolic_witness(&geo, &refined, &stabilizer)?;
    checks.push(PropertyCheck::new(
        "some element acts hyperbolically on the refined tree",
        hyperbolic.is_some(),
        hyperbolic.as_ref().map(|h| format!("{} moves {} to {}", h.element, h.moved, h.image)).unwrap_or_default(),
    ));
    if params.dot {
        report.edge_tree_dot = Some(edge_tree.dot());
        report.refined_dot = Some(rt.dot(&refined));
    }
    let edge_group = split.edge_group();
    let fixed: Vec<bool> = (0..edge_group.rank())
        .map(|j| geo.act_on_class(&split.edge_elem(&edge_group.generator(j)), base_class) == Some(base_class))
        .collect();
    report.refined = Some(RefinedSummary {
        tree_window: tree.summary(),
        elements: refined.elements.len(),
        strict_pairs: refined.strict_pairs,
        transverse_pairs: refined.pocset.transverse_pairs().len(),
        vertices: rt.vertices,
        edges: rt.edges,
        collapse_hits: rt.collapse_hits,
        hyperbolic,
        base_class_fixed_by: edge_group
            .names()
            .iter()
            .zip(&fixed)
            .filter(|(_, &f)| f)
            .map(|(n, _)| n.clone())
            .collect(),
    });

    match collapse(split, side, &fixed, round) {
        Ok(next) => {
            report.outcome = RoundOutcome::Chopped { next: SplittingSummary::of(&next) };
            Ok((report, Some(next)))
        }
        Err(ChopError::Capability(reason)) => {
            report.outcome = RoundOutcome::Stopped { reason };
            Ok((report, None))
        }
        Err(e) => Err(e),
    }
}

/// Generators of the split group and their inverses, then wall elements in
/// shortlex order, up to `EQUIVARIANCE_SAMPLE` elements.
fn equivariance_sample(split: &Splitting, action: &WallAction<'_>) -> Vec<GElem> {
    let mut out: Vec<GElem> = split.generators().iter().flat_map(|g| [g.elem.clone(), g.inverse.clone()]).collect();
    out.extend((0..action.len()).map(|g| action.element(g).clone()));
    out.truncate(EQUIVARIANCE_SAMPLE);
    out
}

/// Forms the next splitting when the chopped side is `A ∗ (factors of the
/// edge group other than F)` and the class of the base point is stabilized
/// exactly by the free factor `F` of the edge group: the refined tree is
/// then the tree of `A ∗_F B`.
pub fn collapse(split: &Splitting, side: HalfSide, fixed: &[bool], round: usize) -> Result<Splitting, ChopError> {
    let SplittingDecl::Amalgam { left, right, edge, left_images, right_images } = split.decl() else {
        return Err(ChopError::Capability("only amalgams are collapsed".into()));
    };
    let (chopped, chopped_images, other, other_images) = match side {
        HalfSide::Left => (left, left_images, right, right_images),
        HalfSide::Right => (right, right_images, left, left_images),
    };
    let (MarkedGroup::FreeProduct(parts), MarkedGroup::FreeProduct(factors)) = (chopped, edge) else {
        return Err(ChopError::Capability(
            "the chopped vertex group and the edge group must both be free products".into(),
        ));
    };
    let offsets = edge.offsets();
    let kept: Vec<usize> = (0..factors.len())
        .filter(|&i| (0..factors[i].rank()).all(|k| fixed[offsets[i] + k]))
        .collect();
    let fixes_any = |i: usize| (0..factors[i].rank()).any(|k| fixed[offsets[i] + k]);
    let [f] = kept.as_slice() else {
        return Err(ChopError::Capability(format!(
            "the base class is stabilized by {} free factors of the edge group",
            kept.len()
        )));
    };
    if (0..factors.len()).any(|i| i != *f && fixes_any(i)) {
        return Err(ChopError::Capability("the base class stabilizer is not a free factor".into()));
    }
    let base = &parts[0];
    if parts.len() != factors.len() {
        return Err(ChopError::Capability("the chopped vertex group is not a base group free product the other edge factors".into()));
    }
    let offs = chopped.offsets();
    for (p, i) in (1..).zip((0..factors.len()).filter(|&i| i != *f)) {
        let matches = parts[p].same_shape(&factors[i])
            && (0..factors[i].rank())
                .all(|k| chopped_images[offsets[i] + k] == chopped.letter(Letter::new(offs[p] + k, false)));
        if !matches {
            return Err(ChopError::Capability(format!(
                "free factor {} of the edge group is not a free factor of the chopped vertex group",
                factors[i].describe()
            )));
        }
    }
    let rank = factors[*f].rank();
    let mut base_images: Vec<Elem> = Vec::with_capacity(rank);
    for k in 0..rank {
        let word = chopped.word(&chopped_images[offsets[*f] + k]);
        if word.iter().any(|l| l.gen() >= base.rank()) {
            return Err(ChopError::Capability("the kept factor does not map into the base factor".into()));
        }
        base_images.push(base.eval(&word));
    }
    let far: Vec<Elem> = other_images[offsets[*f]..offsets[*f] + rank].to_vec();
    let (l, r, li, ri) = match side {
        HalfSide::Left => (base.clone(), other.clone(), base_images, far),
        HalfSide::Right => (other.clone(), base.clone(), far, base_images),
    };
    let decl = SplittingDecl::Amalgam { left: l, right: r, edge: factors[*f].clone(), left_images: li, right_images: ri };
    Ok(Splitting::new(&format!("{}-chop{round}", split.name()), decl)?)
}

/// Chops multi-ended halfspaces until every halfspace window is one-ended
/// or `max_rounds` rounds have run.
pub fn iterate_chop(split: &Splitting, params: &ChopParams) -> Result<ChopReport, ChopError> {
    if params.max_rounds == 0 {
        return Err(ChopError::Invalid("max rounds must be at least 1".into()));
    }
    if params.inner >= params.radius {
        return Err(ChopError::Invalid(format!(
            "inner radius {} must be below the window radius {}",
            params.inner, params.radius
        )));
    }
    let mut current = split.clone();
    let mut rounds = Vec::new();
    let mut terminated = false;
    for round in 1..=params.max_rounds {
        let (report, next) = chop_round(&current, round, params)?;
        let one_ended = matches!(report.outcome, RoundOutcome::OneEnded);
        rounds.push(report);
        if one_ended {
            terminated = true;
            break;
        }
        match next {
            Some(n) => current = n,
            None => break,
        }
    }
    Ok(ChopReport {
        format: REPORT_FORMAT,
        input: split.name().to_string(),
        params: params.clone(),
        rounds,
        terminated,
        final_splitting: SplittingSummary::of(&current),
    })
}
