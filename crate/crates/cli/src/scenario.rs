//! Scenario files.
//!
//! ```text
//! hst-scenario 1
//! # comment
//! name = planes
//!
//! [groups]
//! A = abelian(a, b)
//! B = abelian(c, d)
//! C = abelian(e)
//!
//! [splitting]
//! kind = amalgam
//! left = A
//! right = B
//! edge = C
//! left_images = a
//! right_images = c
//!
//! [probe]
//! inner = 1
//! radius = 4
//! ```
//!
//! Sections: `[groups]` declares named groups with `free(..)`,
//! `abelian(..)`, `direct(..)` and `freeprod(..)` (a declared name may stand
//! for a factor). `[splitting]` is an amalgam (`left`, `right`, `edge`,
//! `left_images`, `right_images`) or an HNN extension (`base`, `edge`,
//! `domain_images`, `image_images`, `stable`). `[artificial]` rewrites an
//! amalgam over an intermediate group (`group`, `edge_images`,
//! `right_images`). `[probe]` holds `group` (Cayley-graph target when there
//! is no splitting), `inner`, `radius`, `budget`, `rounds` and `side`.
//! `[output]` holds default `json` and `dot` paths. Image lists are
//! comma-separated words; commas inside brackets do not split.

use std::collections::BTreeMap;

use hst_groups::{Elem, MarkedGroup};
use hst_splitting::{artificial_split, ArtificialOutcome, HalfSide, Intermediate, SplitError, Splitting, SplittingDecl};
use thiserror::Error;

pub const SCENARIO_HEADER: &str = "hst-scenario";
pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ScenarioError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ScenarioError> {
    Err(ScenarioError { line, msg: msg.into() })
}

/// What the probes run on.
#[derive(Clone, Debug)]
pub enum Target {
    /// The Cayley graph of a marked group.
    Group { name: String, group: MarkedGroup },
    /// A splitting, after any artificial rewrite. Building the subgroup
    /// engines may hit an unsupported case; that error is kept for the
    /// commands that need them.
    Splitting {
        decl: Box<SplittingDecl>,
        split: Result<Box<Splitting>, SplitError>,
        left: String,
        right: Option<String>,
    },
}

/// Probe parameters from the file; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProbeParams {
    pub inner: Option<u32>,
    pub radius: Option<u32>,
    pub budget: Option<usize>,
    pub rounds: Option<usize>,
    pub side: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutputTargets {
    pub json: Option<String>,
    pub dot: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub groups: BTreeMap<String, MarkedGroup>,
    pub target: Target,
    pub probe: ProbeParams,
    pub output: OutputTargets,
}

impl Scenario {
    pub fn decl(&self) -> Option<&SplittingDecl> {
        match &self.target {
            Target::Splitting { decl, .. } => Some(decl),
            Target::Group { .. } => None,
        }
    }

    /// The splitting with engines attached, or the error that prevented
    /// building them.
    pub fn splitting(&self) -> Option<Result<&Splitting, &SplitError>> {
        match &self.target {
            Target::Splitting { split, .. } => Some(split.as_deref()),
            Target::Group { .. } => None,
        }
    }

    /// Resolves `left`, `right` or the name of a vertex group.
    pub fn side(&self, s: &str) -> Option<HalfSide> {
        match s.to_ascii_lowercase().as_str() {
            "left" => return Some(HalfSide::Left),
            "right" => return Some(HalfSide::Right),
            _ => {}
        }
        match &self.target {
            Target::Splitting { left, right, .. } => {
                if s == left {
                    Some(HalfSide::Left)
                } else if right.as_deref() == Some(s) {
                    Some(HalfSide::Right)
                } else {
                    None
                }
            }
            Target::Group { .. } => None,
        }
    }
}

/// `key = value` pairs of one section, with the line of each key.
#[derive(Default)]
struct Section {
    line: usize,
    entries: Vec<(String, String, usize)>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        let i = self.entries.iter().position(|(k, _, _)| k == key)?;
        let (_, v, l) = self.entries.remove(i);
        Some((v, l))
    }

    fn need(&mut self, key: &str, section: &str) -> Result<(String, usize), ScenarioError> {
        match self.take(key) {
            Some(x) => Ok(x),
            None => err(self.line, format!("[{section}] is missing `{key}`")),
        }
    }

    fn finish(self, section: &str) -> Result<(), ScenarioError> {
        match self.entries.first() {
            Some((k, _, l)) => err(*l, format!("unknown key `{k}` in [{section}]")),
            None => Ok(()),
        }
    }
}

const SECTIONS: [&str; 6] = ["", "groups", "splitting", "artificial", "probe", "output"];

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((hl, header)) = lines.next() else {
        return err(1, format!("empty scenario; expected `{SCENARIO_HEADER} {SCENARIO_VERSION}`"));
    };
    match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        [h, v] if *h == SCENARIO_HEADER => match v.parse::<u32>() {
            Ok(SCENARIO_VERSION) => {}
            _ => return err(hl, format!("unsupported scenario version {v:?}")),
        },
        _ => return err(hl, format!("expected header `{SCENARIO_HEADER} {SCENARIO_VERSION}`")),
    }

    let mut sections: BTreeMap<&str, Section> = BTreeMap::new();
    sections.insert("", Section { line: hl, ..Default::default() });
    let mut current = "";
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return err(ln, "unterminated section header");
            };
            let name = name.trim();
            let Some(&known) = SECTIONS.iter().find(|s| **s == name && !s.is_empty()) else {
                return err(ln, format!("unknown section [{name}]"));
            };
            if sections.contains_key(known) {
                return err(ln, format!("section [{known}] appears twice"));
            }
            sections.insert(known, Section { line: ln, ..Default::default() });
            current = known;
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return err(ln, "expected `key = value`");
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return err(ln, "empty key");
        }
        let sec = sections.get_mut(current).expect("current section exists");
        if sec.entries.iter().any(|(e, _, _)| e == k) {
            return err(ln, format!("key `{k}` given twice"));
        }
        sec.entries.push((k.to_string(), v.to_string(), ln));
    }

    let mut top = sections.remove("").expect("top section");
    let name = match top.take("name") {
        Some((n, l)) if n.is_empty() => return err(l, "empty name"),
        Some((n, _)) => n,
        None => return err(hl, "missing `name`"),
    };
    top.finish("top level")?;

    let mut groups = BTreeMap::new();
    if let Some(sec) = sections.remove("groups") {
        for (k, v, l) in sec.entries {
            if !is_ident(&k) {
                return err(l, format!("bad group name {k:?}"));
            }
            let g = parse_group(&v, &groups).map_err(|m| ScenarioError { line: l, msg: m })?;
            g.validate().map_err(|e| ScenarioError { line: l, msg: e.to_string() })?;
            groups.insert(k, g);
        }
    }

    let mut probe_sec = sections.remove("probe").unwrap_or_default();
    let target = match sections.remove("splitting") {
        Some(sec) => splitting_target(&name, sec, sections.remove("artificial"), &groups)?,
        None => {
            if let Some(sec) = sections.remove("artificial") {
                return err(sec.line, "[artificial] needs a [splitting]");
            }
            match probe_sec.take("group") {
                Some((g, l)) => match groups.get(&g) {
                    Some(group) => Target::Group { name: g, group: group.clone() },
                    None => return err(l, format!("unknown group {g:?}")),
                },
                None => return err(hl, "scenario declares neither a [splitting] nor a probe `group`"),
            }
        }
    };
    if let Some((_, l)) = probe_sec.take("group") {
        return err(l, "probe `group` is only meaningful without a [splitting]");
    }
    let probe = ProbeParams {
        inner: number(&mut probe_sec, "inner")?,
        radius: number(&mut probe_sec, "radius")?,
        budget: number(&mut probe_sec, "budget")?,
        rounds: number(&mut probe_sec, "rounds")?,
        side: probe_sec.take("side").map(|(s, _)| s),
    };
    probe_sec.finish("probe")?;
    let mut out_sec = sections.remove("output").unwrap_or_default();
    let output = OutputTargets {
        json: out_sec.take("json").map(|(s, _)| s),
        dot: out_sec.take("dot").map(|(s, _)| s),
    };
    out_sec.finish("output")?;

    let scenario = Scenario { name, groups, target, probe, output };
    if let Some(s) = &scenario.probe.side {
        if scenario.side(s).is_none() {
            return err(hl, format!("probe side {s:?} is neither left, right nor a vertex group"));
        }
    }
    Ok(scenario)
}

fn number<T: std::str::FromStr>(sec: &mut Section, key: &str) -> Result<Option<T>, ScenarioError> {
    match sec.take(key) {
        None => Ok(None),
        Some((v, l)) => v.parse().map(Some).or_else(|_| err(l, format!("`{key}` must be a non-negative integer"))),
    }
}

fn lookup<'a>(groups: &'a BTreeMap<String, MarkedGroup>, (name, line): &(String, usize)) -> Result<&'a MarkedGroup, ScenarioError> {
    groups.get(name).ok_or_else(|| ScenarioError { line: *line, msg: format!("unknown group {name:?}") })
}

fn elements(group: &MarkedGroup, (list, line): &(String, usize)) -> Result<Vec<Elem>, ScenarioError> {
    split_top_level(list)
        .into_iter()
        .map(|w| group.parse(w).map_err(|e| ScenarioError { line: *line, msg: e.to_string() }))
        .collect()
}

fn splitting_target(
    name: &str,
    mut sec: Section,
    artificial: Option<Section>,
    groups: &BTreeMap<String, MarkedGroup>,
) -> Result<Target, ScenarioError> {
    let (kind, kl) = sec.need("kind", "splitting")?;
    let edge_key = sec.need("edge", "splitting")?;
    let edge = lookup(groups, &edge_key)?.clone();
    let (decl, left, right) = match kind.as_str() {
        "amalgam" => {
            let lk = sec.need("left", "splitting")?;
            let rk = sec.need("right", "splitting")?;
            let (l, r) = (lookup(groups, &lk)?.clone(), lookup(groups, &rk)?.clone());
            let left_images = elements(&l, &sec.need("left_images", "splitting")?)?;
            let right_images = elements(&r, &sec.need("right_images", "splitting")?)?;
            (SplittingDecl::Amalgam { left: l, right: r, edge, left_images, right_images }, lk.0, Some(rk.0))
        }
        "hnn" => {
            let bk = sec.need("base", "splitting")?;
            let base = lookup(groups, &bk)?.clone();
            let domain_images = elements(&base, &sec.need("domain_images", "splitting")?)?;
            let image_images = elements(&base, &sec.need("image_images", "splitting")?)?;
            let (stable, sl) = sec.need("stable", "splitting")?;
            if !is_ident(&stable) {
                return err(sl, format!("bad stable letter {stable:?}"));
            }
            (SplittingDecl::Hnn { base, edge, domain_images, image_images, stable }, bk.0, None)
        }
        other => return err(kl, format!("splitting kind must be amalgam or hnn, not {other:?}")),
    };
    let line = sec.line;
    sec.finish("splitting")?;
    let anchored = |l: usize| move |e: SplitError| ScenarioError { line: l, msg: e.to_string() };
    decl.validate().map_err(anchored(line))?;
    let deferred = |decl: SplittingDecl, e: SplitError, left: String, right: Option<String>| {
        if e.is_capability() {
            Ok(Target::Splitting { decl: Box::new(decl), split: Err(e), left, right })
        } else {
            Err(anchored(line)(e))
        }
    };
    let split = match Splitting::new(name, decl.clone()) {
        Ok(s) => s,
        Err(e) => {
            if let Some(art) = artificial {
                return err(art.line, format!("[artificial] needs engines for the splitting: {e}"));
            }
            return deferred(decl, e, left, right);
        }
    };
    let done = |s: Splitting, left: String, right: Option<String>| Target::Splitting {
        decl: Box::new(s.decl().clone()),
        split: Ok(Box::new(s)),
        left,
        right,
    };
    let Some(mut art) = artificial else {
        return Ok(done(split, left, right));
    };
    let SplittingDecl::Amalgam { right: b, .. } = split.decl() else {
        return err(art.line, "[artificial] needs an amalgam");
    };
    let gk = art.need("group", "artificial")?;
    let d = lookup(groups, &gk)?.clone();
    let mid = Intermediate {
        edge_images: elements(&d, &art.need("edge_images", "artificial")?)?,
        right_images: elements(b, &art.need("right_images", "artificial")?)?,
        group: d,
    };
    let aline = art.line;
    art.finish("artificial")?;
    match artificial_split(&split, &mid).map_err(anchored(aline))? {
        ArtificialOutcome::Unchanged(s) => Ok(done(s, left, right)),
        ArtificialOutcome::TrivialEdge => err(aline, "the intermediate group is the whole right factor"),
        ArtificialOutcome::Split(s) => Ok(done(s, format!("{left}*{}", gk.0), right)),
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Splits at commas outside brackets and parentheses.
pub fn split_top_level(list: &str) -> Vec<&str> {
    if list.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in list.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(list[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(list[start..].trim());
    out
}

/// Parses a group expression; declared names may appear as factors.
pub fn parse_group(s: &str, known: &BTreeMap<String, MarkedGroup>) -> Result<MarkedGroup, String> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return known.get(s).cloned().ok_or_else(|| format!("unknown group {s:?}"));
    };
    let Some(body) = s[open + 1..].strip_suffix(')') else {
        return Err(format!("unbalanced parentheses in {s:?}"));
    };
    let args = split_top_level(body);
    let names = || -> Result<Vec<String>, String> {
        args.iter()
            .map(|a| if is_ident(a) { Ok(a.to_string()) } else { Err(format!("bad generator name {a:?}")) })
            .collect()
    };
    let factors = || -> Result<Vec<MarkedGroup>, String> {
        if args.is_empty() {
            return Err(format!("{} needs at least one factor", s[..open].trim()));
        }
        args.iter().map(|a| parse_group(a, known)).collect()
    };
    match s[..open].trim() {
        "free" => Ok(MarkedGroup::Free(names()?)),
        "abelian" => Ok(MarkedGroup::FreeAbelian(names()?)),
        "direct" => Ok(MarkedGroup::Direct(factors()?)),
        "freeprod" => Ok(MarkedGroup::FreeProduct(factors()?)),
        other => Err(format!("unknown group constructor {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_round_trip_through_describe() {
        let known = BTreeMap::new();
        for s in ["free(a, b)", "abelian()", "direct(freeprod(abelian(a2, b2), free(c)), free(d), free(e))"] {
            assert_eq!(parse_group(s, &known).unwrap().describe(), s);
        }
    }

    #[test]
    fn top_level_split_keeps_commutators() {
        assert_eq!(split_top_level("[a,b], a^2 , s*[c, d]"), vec!["[a,b]", "a^2", "s*[c, d]"]);
        assert!(split_top_level("  ").is_empty());
    }

    #[test]
    fn errors_point_at_lines() {
        let text = "hst-scenario 1\nname = x\n[groups]\nA = abelian(a)\nB = tree(b)\n";
        assert_eq!(parse_scenario(text).unwrap_err().line, 5);
        let text = "hst-scenario 1\nname = x\n[groups]\nA = abelian(a)\n[probe]\ngroup = A\nradius = -3\n";
        assert_eq!(parse_scenario(text).unwrap_err().line, 7);
        assert_eq!(parse_scenario("hst-scenario 2\nname = x\n").unwrap_err().line, 1);
        let text = "\n# header missing\nname = x\n";
        assert_eq!(parse_scenario(text).unwrap_err().line, 3);
    }

    #[test]
    fn sides_resolve_by_group_name() {
        let text = "hst-scenario 1\nname = s\n[groups]\nA = free(a, b)\nB = free(c, d)\nC = free(w)\n\
                    [splitting]\nkind = amalgam\nleft = A\nright = B\nedge = C\nleft_images = [a,b]\nright_images = [c,d]\n";
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.side("A"), Some(HalfSide::Left));
        assert_eq!(s.side("B"), Some(HalfSide::Right));
        assert_eq!(s.side("Right"), Some(HalfSide::Right));
        assert_eq!(s.side("C"), None);
    }
}
