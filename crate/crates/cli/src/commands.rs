//! Subcommand implementations. Every command builds its whole stdout
//! payload as a string; all iteration orders are canonical so output is
//! byte-stable across runs and across cache hits and misses.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use ambicard_core::burnside::{
    p_local_idempotents, rational_idempotents, BurnsideElement, BurnsideElementSpec,
    TableOfMarks,
};
use ambicard_core::cardinality::{self, CardExpr, SpaceSpec, SpaceSpecJson};
use ambicard_core::group::{GroupSpec, PermGroup, SubgroupLattice};
use ambicard_core::poset::{FinitePoset, PosetSpec};
use ambicard_core::rational::{rat, to_i64_pair, Rat};

use crate::cache::{self, CacheConfig};
use crate::{CliError, GroupSelector};

pub struct Context {
    pub json: bool,
    pub check: bool,
    pub max_order: usize,
    pub cache: CacheConfig,
}

#[derive(Serialize)]
struct RatJson {
    num: i64,
    den: i64,
}

fn rat_json(r: &Rat) -> Result<RatJson, CliError> {
    let (num, den) = to_i64_pair(r).ok_or_else(|| CliError {
        code: 4,
        message: "rational value exceeds the JSON integer range".into(),
    })?;
    Ok(RatJson { num, den })
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed {what}: {e}")))
}

fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn resolve_spec(selector: &GroupSelector) -> Result<GroupSpec, CliError> {
    match (&selector.file, &selector.family, selector.n) {
        (Some(path), None, None) => parse_json(&read_file(path)?, "group spec"),
        (None, Some(family), Some(n)) => Ok(GroupSpec::Family {
            family: family.clone(),
            n,
        }),
        _ => Err(CliError::input(
            "select a group with --file PATH or --family NAME --n K",
        )),
    }
}

fn build_group(ctx: &Context, selector: &GroupSelector) -> Result<(GroupSpec, PermGroup), CliError> {
    let spec = resolve_spec(selector)?;
    let group = spec.build(ctx.max_order)?;
    Ok((spec, group))
}

/// Lattice through the cache: hit, or compute-and-store.
fn lattice_for(ctx: &Context, group: &PermGroup) -> Result<SubgroupLattice, CliError> {
    if let Some(lattice) = cache::load(&ctx.cache, group) {
        return Ok(lattice);
    }
    let lattice = SubgroupLattice::compute(group)?;
    // warm everything the cache persists
    TableOfMarks::new(&lattice);
    lattice.subgroup_poset().mobius();
    cache::store(&ctx.cache, &lattice);
    Ok(lattice)
}

// ----- group info -----

#[derive(Serialize)]
struct ClassReport {
    index: usize,
    order: u32,
    class_size: u32,
    normalizer_order: u32,
    weyl_order: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_residual_class: Option<usize>,
    solvable_residual_class: usize,
}

#[derive(Serialize)]
struct GroupInfoReport {
    group: GroupSpec,
    degree: usize,
    order: usize,
    classes: Vec<ClassReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table_of_marks: Option<Vec<Vec<i64>>>,
}

pub fn group_info(
    ctx: &Context,
    selector: &GroupSelector,
    marks: bool,
    prime: Option<u64>,
) -> Result<String, CliError> {
    if let Some(p) = prime {
        require_prime(p)?;
    }
    let (_, group) = build_group(ctx, selector)?;
    let lattice = lattice_for(ctx, &group)?;

    let classes: Vec<ClassReport> = (0..lattice.class_count())
        .map(|c| {
            let data = lattice.class(c);
            ClassReport {
                index: c,
                order: data.order(),
                class_size: data.class_size(),
                normalizer_order: data.normalizer_order(),
                weyl_order: data.weyl_order(),
                p_residual_class: prime.map(|p| lattice.p_residual_class(c, p)),
                solvable_residual_class: lattice.solvable_residual_class(c),
            }
        })
        .collect();
    let table = marks.then(|| {
        let t = TableOfMarks::new(&lattice);
        (0..t.class_count()).map(|h| t.row(h).to_vec()).collect()
    });

    if ctx.json {
        return Ok(to_pretty(&GroupInfoReport {
            group: GroupSpec::canonical(&group),
            degree: group.degree(),
            order: group.order(),
            classes,
            table_of_marks: table,
        }));
    }

    let mut out = String::new();
    writeln!(out, "group: degree {}, order {}", group.degree(), group.order()).unwrap();
    writeln!(out, "classes: {}", classes.len()).unwrap();
    let p_header = prime.map(|p| format!("O^{p}")).unwrap_or_default();
    writeln!(
        out,
        "{:<6} {:>6} {:>6} {:>7} {:>7}{} {:>6}",
        "class",
        "order",
        "size",
        "|N(H)|",
        "|W(H)|",
        if prime.is_some() {
            format!(" {p_header:>6}")
        } else {
            String::new()
        },
        "H_S"
    )
    .unwrap();
    for c in &classes {
        writeln!(
            out,
            "#{:<5} {:>6} {:>6} {:>7} {:>7}{} {:>6}",
            c.index,
            c.order,
            c.class_size,
            c.normalizer_order,
            c.weyl_order,
            match c.p_residual_class {
                Some(r) => format!(" {:>6}", format!("#{r}")),
                None => String::new(),
            },
            format!("#{}", c.solvable_residual_class),
        )
        .unwrap();
    }
    if let Some(table) = table {
        writeln!(out, "table of marks (rows (H), columns (K)):").unwrap();
        let width = table
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (h, row) in table.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(out, "#{h}: {}", cells.join(" ")).unwrap();
        }
    }
    Ok(out)
}

// ----- burnside idempotents -----

#[derive(Serialize)]
struct IdempotentReport {
    class: usize,
    element: BurnsideElementSpec,
    marks: Vec<RatJson>,
}

#[derive(Serialize)]
struct IdempotentsReport {
    group: GroupSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
    idempotents: Vec<IdempotentReport>,
    verified: bool,
}

pub fn idempotents(
    ctx: &Context,
    selector: &GroupSelector,
    prime: Option<u64>,
    rational: bool,
) -> Result<String, CliError> {
    if prime.is_none() && !rational {
        return Err(CliError::input("pass --prime P or --rational"));
    }
    if let Some(p) = prime {
        require_prime(p)?;
    }
    let (_, group) = build_group(ctx, selector)?;
    let lattice = lattice_for(ctx, &group)?;

    let idems: Vec<(usize, BurnsideElement)> = match prime {
        Some(p) => p_local_idempotents(&lattice, p)?,
        None => rational_idempotents(&lattice)
            .into_iter()
            .enumerate()
            .collect(),
    };

    // self-checks: idempotency, pairwise orthogonality, sum to the unit
    let mut verified = true;
    let mut witness = String::new();
    let mut sum = BurnsideElement::zero(&lattice);
    for (c, e) in &idems {
        if e.mul(e) != *e {
            verified = false;
            witness = format!("e[#{c}] is not idempotent");
        }
        sum = sum.add(e);
    }
    for (i, (c, e)) in idems.iter().enumerate() {
        for (d, f) in idems.iter().skip(i + 1) {
            if !e.mul(f).is_zero() {
                verified = false;
                witness = format!("e[#{c}]·e[#{d}] is not 0");
            }
        }
    }
    if sum != BurnsideElement::one(&lattice) {
        verified = false;
        witness = "idempotents do not sum to [G/G]".into();
    }
    if !verified {
        return Err(CliError {
            code: 4,
            message: format!("idempotent self-check failed: {witness}"),
        });
    }

    if ctx.json {
        let reports = idems
            .iter()
            .map(|(c, e)| {
                Ok(IdempotentReport {
                    class: *c,
                    element: e.to_spec(GroupSpec::canonical(&group))?,
                    marks: e
                        .marks()
                        .values()
                        .iter()
                        .map(rat_json)
                        .collect::<Result<Vec<_>, _>>()?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        return Ok(to_pretty(&IdempotentsReport {
            group: GroupSpec::canonical(&group),
            prime,
            idempotents: reports,
            verified,
        }));
    }

    let mut out = String::new();
    match prime {
        Some(p) => writeln!(
            out,
            "{} primitive idempotents of the {p}-local Burnside ring ({p}-perfect classes)",
            idems.len()
        )
        .unwrap(),
        None => writeln!(
            out,
            "{} primitive idempotents of the rational Burnside ring (one per class)",
            idems.len()
        )
        .unwrap(),
    }
    for (c, e) in &idems {
        writeln!(out, "e[#{c}] = {}", ambicard_core::burnside::format_element(e)).unwrap();
        let marks: Vec<String> = e.marks().values().iter().map(|v| v.to_string()).collect();
        writeln!(out, "  marks: {}", marks.join(" ")).unwrap();
    }
    writeln!(out, "verified: idempotency, orthogonality, sum = [G/G]").unwrap();
    Ok(out)
}

// ----- burnside marks -----

#[derive(Serialize)]
struct MarksReport {
    class_orders: Vec<u32>,
    marks: Vec<RatJson>,
}

pub fn element_marks(ctx: &Context, path: &Path) -> Result<String, CliError> {
    let spec: BurnsideElementSpec = parse_json(&read_file(path)?, "Burnside element")?;
    let group = spec.group.build(ctx.max_order)?;
    let lattice = lattice_for(ctx, &group)?;
    let element = BurnsideElement::from_spec(&lattice, &spec)?;
    let marks = element.marks();

    if ctx.json {
        return Ok(to_pretty(&MarksReport {
            class_orders: (0..lattice.class_count())
                .map(|c| lattice.class(c).order())
                .collect(),
            marks: marks
                .values()
                .iter()
                .map(rat_json)
                .collect::<Result<Vec<_>, _>>()?,
        }));
    }

    let mut out = String::new();
    writeln!(out, "marks over {} classes:", lattice.class_count()).unwrap();
    for (c, v) in marks.values().iter().enumerate() {
        writeln!(out, "#{c} (order {:>3}): {v}", lattice.class(c).order()).unwrap();
    }
    Ok(out)
}

// ----- card bg / card space -----

#[derive(Serialize)]
struct CardReport {
    #[serde(flatten)]
    expr: ambicard_core::cardinality::CardExprSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<String>>,
}

fn card_output(ctx: &Context, expr: &CardExpr, checks: Option<Vec<String>>) -> Result<String, CliError> {
    if ctx.json {
        return Ok(to_pretty(&CardReport {
            expr: expr.to_spec()?,
            checks,
        }));
    }
    let mut out = format!("{expr}\n");
    for line in checks.into_iter().flatten() {
        writeln!(out, "check: {line}").unwrap();
    }
    Ok(out)
}

pub fn card_bg(ctx: &Context, selector: &GroupSelector, p: u64) -> Result<String, CliError> {
    let (_, group) = build_group(ctx, selector)?;
    let lattice = lattice_for(ctx, &group)?;
    let card = cardinality::card_bg(&lattice, p)?;

    let checks = if ctx.check {
        let mut lines = Vec::new();
        let sylow_count = lattice.sylow_subgroups(p).len();
        if sylow_count <= cardinality::DEFAULT_MAX_SYLOWS {
            let subset_route =
                cardinality::sylow_inclusion_exclusion(&lattice, p, cardinality::DEFAULT_MAX_SYLOWS)?;
            let weights = cardinality::bg_weights(&lattice, p)?;
            if subset_route != weights {
                return Err(CliError {
                    code: 4,
                    message: "route equivalence failed: subset sum differs from idempotent weights"
                        .into(),
                });
            }
            lines.push(format!(
                "route equivalence over {sylow_count} Sylow subgroup(s): pass"
            ));
        } else {
            lines.push(format!(
                "route equivalence: skipped ({sylow_count} Sylow subgroups exceed cap)"
            ));
        }
        let expected = rat(1, group.order() as i64);
        if card.evaluate(&rat(1, p as i64))? != expected {
            return Err(CliError {
                code: 4,
                message: format!("evaluation at x = 1/{p} does not equal 1/{}", group.order()),
            });
        }
        lines.push(format!("evaluation at x = 1/{p} equals 1/|G|: pass"));
        Some(lines)
    } else {
        None
    };
    card_output(ctx, &card, checks)
}

pub fn card_space(ctx: &Context, path: &Path, p: u64) -> Result<String, CliError> {
    let json: SpaceSpecJson = parse_json(&read_file(path)?, "space spec")?;
    let group = json.group.build(ctx.max_order)?;
    let space = SpaceSpec::from_parts(&group, &json.homotopy)?;
    let lattice = lattice_for(ctx, &group)?;
    let card = cardinality::card_space(&lattice, &space, p)?;

    let checks = if ctx.check {
        let expected = space.alternating_product();
        if card.evaluate(&rat(1, p as i64))? != expected {
            return Err(CliError {
                code: 4,
                message: format!(
                    "evaluation at x = 1/{p} does not equal the alternating product {expected}"
                ),
            });
        }
        Some(vec![format!(
            "evaluation at x = 1/{p} equals the alternating homotopy-order product: pass"
        )])
    } else {
        None
    };
    card_output(ctx, &card, checks)
}

// ----- poset mobius -----

#[derive(Serialize)]
struct MobiusPair {
    from: String,
    to: String,
    value: i64,
}

#[derive(Serialize)]
struct MobiusReport {
    pairs: Vec<MobiusPair>,
}

pub fn poset_mobius(ctx: &Context, path: &Path) -> Result<String, CliError> {
    let spec: PosetSpec = parse_json(&read_file(path)?, "poset spec")?;
    let poset = FinitePoset::from_spec(&spec)?;
    let mu = poset.mobius();

    let pairs = poset
        .comparable_pairs()
        .iter()
        .map(|&(x, y)| {
            let value = mu.value_at(x as usize, y as usize).unwrap();
            let (num, den) = to_i64_pair(&value).expect("Möbius values are small integers");
            debug_assert_eq!(den, 1);
            MobiusPair {
                from: poset.elements()[x as usize].clone(),
                to: poset.elements()[y as usize].clone(),
                value: num,
            }
        })
        .collect::<Vec<_>>();

    if ctx.json {
        return Ok(to_pretty(&MobiusReport { pairs }));
    }
    let mut out = String::new();
    for p in &pairs {
        writeln!(out, "{} <= {}: {}", p.from, p.to, p.value).unwrap();
    }
    Ok(out)
}

fn require_prime(p: u64) -> Result<(), CliError> {
    // defer to the core validation used by the cardinality entry points
    cardinality::card_b_pgroup(1, p).map(|_| ()).map_err(CliError::from)
}
