//! End-to-end reports assembled from named sections.
//!
//! Each section is a [`Section`] registered under a name; a command is a list of
//! section names run in order against the same inputs. The JSON form is a single
//! object with sorted keys, exact numbers and fractions written as strings.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::io::ArrangementFile;
use crate::arrangement::{
    build_ceva, check_point_names, Arrangement, ArrangementError, PRINTED_POINT_NAMES,
};
use crate::check::Check;
use crate::chern::{ChernError, CoverModel};
use crate::cover::io::CharacterFile;
use crate::cover::{ceva_character, quotient_rows, validate_character, CharacterMap, CoverError};
use crate::exactmath::elimination::DEFAULT_ELIMINATOR;
use crate::exactmath::RatNum;
use crate::genus::{bound_tables, choose_chart_seeded, GenusError, GenusSolver};
use crate::numerology::{
    branch_curve_invariants, consistency_checks, deformation_class_count, homeotopy_order,
    symbolic_branch_curve,
};
use crate::symmetry::{diophantine_obstruction, general_position_anchors, rigidity_search};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("arrangement: {0}")]
    Arrangement(#[from] ArrangementError),
    #[error("character: {0}")]
    Cover(#[from] CoverError),
    #[error("chern: {0}")]
    Chern(#[from] ChernError),
    #[error("genus: {0}")]
    Genus(#[from] GenusError),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
}

/// Tunables shared by all sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Index among valid infinity lines.
    pub chart_seed: usize,
    pub eliminator: String,
    /// Multiple of K for the branch-curve numerology.
    pub m: i64,
    /// Overrides the computed K² in the numerology section.
    pub k_squared: Option<i64>,
    /// n for the deformation-class and homeotopy counts.
    pub dim: i64,
    /// Include eigenform bases in the genus section.
    pub forms: bool,
    /// Append the bound tables to `full`.
    pub tables: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            chart_seed: 0,
            eliminator: DEFAULT_ELIMINATOR.to_string(),
            m: 5,
            k_squared: None,
            dim: 2,
            forms: false,
            tables: false,
        }
    }
}

/// A validated arrangement and character.
#[derive(Clone, Debug)]
pub struct Inputs {
    pub arrangement: Arrangement,
    pub character: CharacterMap,
    /// Whether this is the built-in reference configuration, which enables checks
    /// against its known invariants.
    pub reference: bool,
}

impl Inputs {
    pub fn ceva() -> Self {
        Inputs {
            arrangement: build_ceva(),
            character: ceva_character(),
            reference: true,
        }
    }

    /// Parses the JSON file formats and validates the character against the lines.
    pub fn from_json(arrangement: &str, character: &str) -> Result<Self, ReportError> {
        let arr = ArrangementFile::from_json(arrangement)?.to_arrangement()?;
        let c = CharacterFile::from_json(character)?.to_character()?;
        validate_character(&c, &arr)?.into_result()?;
        Ok(Inputs {
            arrangement: arr,
            character: c,
            reference: false,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvenanceNote {
    pub topic: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub fields: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub provenance_notes: Vec<ProvenanceNote>,
    /// Human-readable lines, in section order.
    pub text: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_value(&self) -> Value {
        let mut map: serde_json::Map<String, Value> =
            self.fields.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        map.insert("checks".into(), json!(self.checks));
        map.insert("provenance_notes".into(), json!(self.provenance_notes));
        Value::Object(map)
    }

    /// Pretty-printed JSON. Object keys come out sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values are plain JSON")
    }

    pub fn render_text(&self) -> String {
        let mut out = self.text.join("\n");
        if !self.provenance_notes.is_empty() {
            out.push_str("\n\nprovenance notes:");
            for n in &self.provenance_notes {
                out.push_str(&format!("\n  [{}] {}", n.topic, n.detail));
            }
        }
        out.push_str("\n\nchecks:");
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("\n  {mark} {}: {}", c.name, c.detail));
        }
        out.push('\n');
        out
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    fn note(&mut self, topic: &str, detail: impl Into<String>) {
        self.provenance_notes.push(ProvenanceNote {
            topic: topic.to_string(),
            detail: detail.into(),
        });
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }
}

pub struct Context<'a> {
    pub inputs: &'a Inputs,
    pub options: &'a ReportOptions,
}

pub trait Section: Send + Sync {
    fn name(&self) -> &'static str;

    fn run(&self, ctx: &Context<'_>, report: &mut Report) -> Result<(), ReportError>;
}

struct Invariants;
struct Genus;
struct Rigidity;
struct Numerology;
struct Tables;
struct Provenance;

static SECTIONS: [&dyn Section; 6] = [
    &Invariants,
    &Genus,
    &Rigidity,
    &Numerology,
    &Tables,
    &Provenance,
];

pub fn sections() -> &'static [&'static dyn Section] {
    &SECTIONS
}

pub fn section(name: &str) -> Option<&'static dyn Section> {
    SECTIONS.iter().copied().find(|s| s.name() == name)
}

/// Subcommands and the sections they run.
pub const COMMANDS: [&str; 6] = ["full", "invariants", "pg", "rigidity", "numerology", "tables"];

fn command_sections(command: &str, options: &ReportOptions) -> Option<Vec<&'static str>> {
    match command {
        "full" => {
            let mut s = vec!["invariants", "pg", "rigidity", "numerology"];
            if options.tables {
                s.push("tables");
            }
            s.push("provenance");
            Some(s)
        }
        "invariants" => Some(vec!["invariants"]),
        "pg" => Some(vec!["pg"]),
        "rigidity" => Some(vec!["rigidity"]),
        "numerology" => Some(vec!["numerology"]),
        "tables" => Some(vec!["tables", "provenance"]),
        _ => None,
    }
}

pub fn run(command: &str, inputs: &Inputs, options: &ReportOptions) -> Result<Report, ReportError> {
    let names = command_sections(command, options)
        .ok_or_else(|| ReportError::UnknownCommand(command.to_string()))?;
    let ctx = Context { inputs, options };
    let mut report = Report::default();
    for name in names {
        section(name).expect("commands name registered sections").run(&ctx, &mut report)?;
    }
    Ok(report)
}

/// The full pipeline on the built-in configuration with default options.
pub fn run_ceva_full() -> Result<Report, ReportError> {
    run("full", &Inputs::ceva(), &ReportOptions::default())
}

/// The full pipeline on user-supplied JSON files.
pub fn run_custom(
    arrangement: &str,
    character: &str,
    options: &ReportOptions,
) -> Result<Report, ReportError> {
    run("full", &Inputs::from_json(arrangement, character)?, options)
}

fn rat(q: &RatNum) -> Value {
    Value::String(q.to_string())
}

impl Section for Invariants {
    fn name(&self) -> &'static str {
        "invariants"
    }

    fn run(&self, ctx: &Context<'_>, r: &mut Report) -> Result<(), ReportError> {
        let arr = &ctx.inputs.arrangement;
        let c = &ctx.inputs.character;
        let model = CoverModel::new(arr, c)?;
        let inv = model.invariants()?;
        let table = model.upstairs_intersections();
        let decomposition = model.canonical_decomposition();

        let histogram: BTreeMap<String, usize> = arr
            .multiplicity_histogram()
            .into_iter()
            .map(|(m, n)| (m.to_string(), n))
            .collect();
        r.set(
            "arrangement",
            json!({
                "lines": arr.line_count(),
                "multiplicities": histogram,
                "multiple_points": arr.multiple_points().iter().map(|p| p.name()).collect::<Vec<_>>(),
            }),
        );
        r.set("character", serde_json::to_value(CharacterFile::from_character(c)).expect("plain data"));
        r.set("K2", json!(inv.k_squared));
        r.set("euler", json!(inv.euler));
        r.set("miyaoka_yau", json!(inv.is_miyaoka_yau()));
        r.set("chi", rat(&inv.chi_holo));
        r.set("intersections", json!(table));
        r.set(
            "canonical_class",
            match &decomposition {
                Some((a, b)) => json!({"C": a.to_string(), "D": b.to_string()}),
                None => Value::Null,
            },
        );

        r.line(format!(
            "arrangement: {} lines, multiple points {:?}",
            arr.line_count(),
            arr.multiplicity_histogram()
        ));
        r.line(format!("cover degree |G| = {}", inv.degree));
        r.line(format!(
            "K^2 = {}, e = {}, chi = {}, K^2 = 3e: {}",
            inv.k_squared,
            inv.euler,
            inv.chi_holo,
            inv.is_miyaoka_yau()
        ));
        if let Some((a, b)) = &decomposition {
            r.line(format!("K = ({a})·ΣC + ({b})·ΣD"));
        }

        r.check("chi integral", inv.noether_integral(), format!("(K^2 + e)/12 = {}", inv.chi_holo));
        // K need not be ample for arbitrary inputs, so these only gate the reference run
        for ch in model.ampleness_checks() {
            if ctx.inputs.reference {
                r.checks.push(ch);
            } else {
                r.line(format!("  {} ({}): {}", ch.name, if ch.passed { "holds" } else { "fails" }, ch.detail));
            }
        }

        if ctx.inputs.reference {
            let points = arr.multiple_points();
            r.check(
                "reference: 9 lines, 12 triple points",
                arr.line_count() == 9
                    && points.len() == 12
                    && points.iter().all(|p| p.multiplicity() == 3),
                format!("{} lines, {} multiple points", arr.line_count(), points.len()),
            );
            r.check("reference: K^2 = 333", inv.k_squared == 333, inv.k_squared.to_string());
            r.check("reference: e = 111", inv.euler == 111, inv.euler.to_string());
            r.check(
                "reference: chi = 37",
                inv.chi_holo == RatNum::integer(37),
                inv.chi_holo.to_string(),
            );
            let all = |v: &[crate::chern::ComponentIntersections], sq: i64, k: i64| {
                v.iter().all(|c| {
                    c.self_intersection == RatNum::integer(sq) && c.canonical_degree == RatNum::integer(k)
                })
            };
            r.check(
                "reference: C^2 = -3, C.K = 9, D^2 = -1, D.K = 3",
                all(&table.lines, -3, 9) && all(&table.points, -1, 3),
                format!("{} curves C, {} curves D", table.lines.len(), table.points.len()),
            );
            let identity = decomposition.as_ref().is_some_and(|(a, b)| {
                a * &RatNum::integer(3) == RatNum::integer(7) && b * &RatNum::integer(3) == RatNum::integer(12)
            });
            r.check("reference: 3K = 7ΣC + 12ΣD", identity, format!("{decomposition:?}"));
        }
        Ok(())
    }
}

impl Section for Genus {
    fn name(&self) -> &'static str {
        "pg"
    }

    fn run(&self, ctx: &Context<'_>, r: &mut Report) -> Result<(), ReportError> {
        let arr = &ctx.inputs.arrangement;
        let chart = choose_chart_seeded(arr, ctx.options.chart_seed).map_err(GenusError::from)?;
        let solver = GenusSolver::new(arr, &chart).with_eliminator(&ctx.options.eliminator)?;
        let report = solver.abelian(&ctx.inputs.character)?;

        r.set("quotient_pg", json!(report.quotient_pg()));
        r.set("pg", json!(report.pg));
        r.set("q", json!(report.q));
        r.set(
            "genus",
            json!({
                "chart": report.chart,
                "eliminator": report.eliminator,
                "quotients": report.quotients,
            }),
        );

        r.line(format!("chart: {} (eliminator {})", report.chart, report.eliminator));
        for q in &report.quotients {
            r.line(format!(
                "  {:<12} row {}  dims {:?}  p_g = {}",
                q.subgroup, q.row, q.dimensions, q.pg
            ));
        }
        r.line(format!("p_g = {}, q = {}", report.pg, report.q));

        if ctx.options.forms {
            let mut forms = serde_json::Map::new();
            for q in &report.quotients {
                let per_j: Vec<Vec<String>> = q
                    .eigenspaces
                    .iter()
                    .map(|e| e.forms().iter().map(ToString::to_string).collect())
                    .collect();
                for (j, fs) in per_j.iter().enumerate() {
                    for f in fs {
                        r.line(format!("  {} j={j}: {f}", q.subgroup));
                    }
                }
                forms.insert(q.subgroup.clone(), json!(per_j));
            }
            r.set("forms", Value::Object(forms));
        }

        let verified = report
            .quotients
            .iter()
            .flat_map(|q| &q.eigenspaces)
            .all(|e| e.verify(&chart, arr));
        r.check("eigenforms satisfy their vanishing orders", verified, "exact re-check of every basis form");
        r.check("q >= 0", report.q >= 0, format!("q = {}", report.q));
        if ctx.inputs.reference {
            r.check(
                "reference: quotient p_g = [1,5,5,13,11,1]",
                report.quotient_pg() == [1, 5, 5, 13, 11, 1],
                format!("{:?}", report.quotient_pg()),
            );
            r.check("reference: p_g = 36, q = 0", report.pg == 36 && report.q == 0, format!("{} {}", report.pg, report.q));
        }
        Ok(())
    }
}

impl Section for Rigidity {
    fn name(&self) -> &'static str {
        "rigidity"
    }

    fn run(&self, ctx: &Context<'_>, r: &mut Report) -> Result<(), ReportError> {
        let arr = &ctx.inputs.arrangement;
        let rep = rigidity_search(arr, &ctx.inputs.character)?;
        let anchored = general_position_anchors(arr).next().is_some();
        let obstruction = diophantine_obstruction(7, 12, 27);
        r.set(
            "rigidity",
            json!({
                "deck_group_order": rep.deck_group_order,
                "incidence_automorphisms": rep.incidence_automorphisms,
                "realizable": rep.realizable,
                "realizable_holomorphic": rep.realizable_holomorphic,
                "realizable_antiholomorphic": rep.realizable_antiholomorphic,
                "respecting": rep.respecting,
                "obstruction_7a_12b_27": obstruction,
            }),
        );
        r.line(format!(
            "rigidity: {} incidence automorphisms, {} realizable ({} holomorphic, {} antiholomorphic), respecting {:?}",
            rep.incidence_automorphisms,
            rep.realizable,
            rep.realizable_holomorphic,
            rep.realizable_antiholomorphic,
            rep.respecting
        ));
        if anchored {
            r.check(
                "identity respects the covering",
                rep.respecting.iter().any(|s| s == "identity"),
                format!("{:?}", rep.respecting),
            );
            r.check("survivors form a group", rep.survivors_form_group, format!("{} survivors", rep.respecting.len()));
        } else {
            r.line("rigidity: no four lines in general position, realizability not decided");
        }
        if ctx.inputs.reference {
            r.check(
                "reference: 432 incidence automorphisms",
                rep.incidence_automorphisms == 432,
                rep.incidence_automorphisms.to_string(),
            );
            r.check(
                "reference: only the identity respects the covering",
                rep.respecting == ["identity"],
                format!("{:?}", rep.respecting),
            );
            r.check("reference: 7a + 12b = 27 has no solutions", obstruction.is_empty(), format!("{obstruction:?}"));
        }
        Ok(())
    }
}

impl Section for Numerology {
    fn name(&self) -> &'static str {
        "numerology"
    }

    fn run(&self, ctx: &Context<'_>, r: &mut Report) -> Result<(), ReportError> {
        let o = ctx.options;
        let k2 = match o.k_squared {
            Some(k) => k,
            None => CoverModel::new(&ctx.inputs.arrangement, &ctx.inputs.character)?.k_squared()?,
        };
        let symbolic = symbolic_branch_curve(k2);
        let instance = branch_curve_invariants(k2, o.m);
        let deformation = deformation_class_count(o.dim);
        let homeotopy = homeotopy_order(o.dim);
        r.set(
            "numerology",
            json!({
                "k_squared": k2,
                "m": o.m,
                "symbolic": symbolic,
                "instance": match &instance {
                    Ok(d) => json!(d),
                    Err(e) => json!({"error": e.to_string()}),
                },
                "n": o.dim,
                "deformation_class_count": deformation.as_ref().map_or_else(|e| json!({"error": e.to_string()}), |v| json!(v)),
                "homeotopy_order": homeotopy.as_ref().map_or_else(|e| json!({"error": e.to_string()}), |v| json!(v.to_string())),
            }),
        );
        r.line(format!("numerology for K^2 = {k2}:"));
        r.line(format!("  deg f_m = {}", symbolic.covering_degree));
        r.line(format!("  deg C   = {}", symbolic.curve_degree));
        r.line(format!("  g(C)    = {}", symbolic.geometric_genus));
        r.line(format!("  cusps   = {}", symbolic.cusp_count));
        match &instance {
            Ok(d) => r.line(format!(
                "  m = {}: deg f = {}, deg C = {}, g = {}, cusps = {}, nodes = {}{}",
                d.m,
                d.covering_degree,
                d.curve_degree,
                d.geometric_genus,
                d.cusp_count,
                d.node_count,
                if d.extrapolated { " (extrapolated)" } else { "" }
            )),
            Err(e) => r.line(format!("  m = {}: {e}", o.m)),
        }
        match (&deformation, &homeotopy) {
            (Ok(d), Ok(h)) => r.line(format!(
                "  n = {}: deformation classes {d}, homeotopy order {h}",
                o.dim
            )),
            (d, h) => r.line(format!("  n = {}: {d:?} {h:?}", o.dim)),
        }
        if instance.as_ref().is_ok_and(|d| d.extrapolated) {
            r.note("numerology", format!("K^2 = {k2} is outside the printed instantiations; values are extrapolated"));
        }
        if k2 % 3 == 0 {
            for c in consistency_checks(k2, o.m) {
                r.checks.push(c);
            }
        } else {
            r.line(format!("  K^2 = {k2} is not divisible by 3; branch-curve formulas do not apply"));
        }
        Ok(())
    }
}

impl Section for Tables {
    fn name(&self) -> &'static str {
        "tables"
    }

    fn run(&self, ctx: &Context<'_>, r: &mut Report) -> Result<(), ReportError> {
        let p = ctx.inputs.character.p();
        let tables = bound_tables(p);
        r.set("tables", json!(tables));
        for t in &tables {
            r.line(t.render());
        }
        Ok(())
    }
}

impl Section for Provenance {
    fn name(&self) -> &'static str {
        "provenance"
    }

    fn run(&self, ctx: &Context<'_>, r: &mut Report) -> Result<(), ReportError> {
        if !ctx.inputs.reference {
            return Ok(());
        }
        for d in check_point_names(&ctx.inputs.arrangement, &PRINTED_POINT_NAMES) {
            r.note(
                "point naming",
                format!(
                    "p{} is not a concurrent triple; triples sharing two of its lines: {}",
                    d.printed,
                    d.candidates.join(", ")
                ),
            );
        }
        let [degree, _, _] = bound_tables(5);
        for m in degree.mismatches() {
            r.note(
                "degree bound table",
                format!(
                    "cell n={}, j={} is printed as {} but (p-j-1)n-3 = {}",
                    m.column, m.j, m.printed, m.computed
                ),
            );
        }
        let clamped: Vec<String> = degree
            .clamped_cells()
            .iter()
            .map(|(j, n)| format!("(n={n}, j={j})"))
            .collect();
        r.note(
            "degree bound table",
            format!(
                "negative bounds printed as 0 at {}; these eigenspaces are zero",
                clamped.join(", ")
            ),
        );
        r.note(
            "fourth quotient forms",
            "the condition p267 ∈ {P1=0} is listed twice; the computed dimensions (4,5,2,2,0) fix p_g = 13",
        );
        // the quotient table must exist for the reference character
        quotient_rows(&ctx.inputs.character)?;
        Ok(())
    }
}
