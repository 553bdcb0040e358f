//! The JSON classification report: everything the library derives about one
//! isogeny class, with the epistemic status of each group claim and the
//! cross-method agreement flags. Disagreement between methods is a hard
//! error (exit code 3), never a released report.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use avfq::group::AbGroup;
use avfq::order::{Order, DEFAULT_ENUM_CAP};
use avfq::points::{
    dual_group, group_from_order, not_self_dual_witness, quotient_group,
    search_groups_for_multiplicator, ClaimBasis, FunctorRegime,
};
use avfq::weil::{ClassData, MethodVerdicts, WeilPoly};
use avfq::{Error as CoreError, Result as CoreResult};

use crate::lmfdb::lmfdb_label;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub q: String,
    pub g: usize,
    /// Ascending coefficients of h.
    pub h: Vec<String>,
    pub n: u32,
    pub point_count: String,
    pub flags: Flags,
    pub cyclic: VerdictBlock,
    pub rich: VerdictBlock,
    pub admissible_groups: Vec<Vec<String>>,
    pub conductor_index: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overorder_count: Option<usize>,
    /// Set when overorder enumeration hit the candidate cap and the
    /// per-order list was truncated to R and O_K.
    pub orders_truncated: bool,
    pub per_order: Vec<OrderReport>,
    pub duality: DualityReport,
    pub timings: Timings,
}

#[derive(Clone, Debug, Serialize)]
pub struct Flags {
    pub squarefree: bool,
    pub ordinary: bool,
    pub has_real_roots: bool,
    pub functor_regime: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictBlock {
    pub verdict: bool,
    pub methods_agree: bool,
    pub methods: Vec<MethodEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodEntry {
    pub name: String,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    /// Hash of the canonical basis; stable identifier inside the report.
    pub basis_hash: String,
    pub index_in_maximal: String,
    pub conjugation_stable: bool,
    pub is_frobenius_order: bool,
    pub is_maximal: bool,
    pub primes_over_one_minus_pi_n: Vec<PrimeReport>,
    pub group: Vec<String>,
    pub basis_of_claim: String,
    pub warning: bool,
    /// Groups found by the bounded ideal search (witness search, not a
    /// completeness claim), when it was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub searched_groups: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeReport {
    pub p: String,
    pub residue_degree: usize,
    pub cm_type: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    /// First self-duality obstruction found: every variety with that
    /// endomorphism ring differs from its dual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_dual_obstruction: Option<ObstructionReport>,
    pub sample_dual_pairs: Vec<DualPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coprime_conductor_group: Option<Vec<String>>,
    /// Conjugation-stable orders with a type-2 prime that is *not*
    /// conjugation-stable: the obstruction provably cannot fire there, and
    /// `I = d S^t + pbar^m` realizes a locally self-dual class with
    /// multiplicator ring S. The chosen parameters are recorded.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cmtype2_counterexamples: Vec<CounterexampleReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub order_hash: String,
    pub prime: PrimeReport,
    pub d: String,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub order_hash: String,
    pub end_ring_hash: String,
    pub prime: PrimeReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualPair {
    pub order_hash: String,
    pub group: Vec<String>,
    pub dual_group: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub validate_ms: u128,
    pub classify_ms: u128,
    pub orders_ms: u128,
    pub duality_ms: u128,
    pub total_ms: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderScope {
    All,
    Maximal,
    Frobenius,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub n: u32,
    pub orders: OrderScope,
    pub label: Option<String>,
    pub search_depth: Option<u32>,
    pub enum_cap: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            n: 1,
            orders: OrderScope::All,
            label: None,
            search_depth: None,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

fn group_strings(g: &AbGroup) -> Vec<String> {
    g.invariant_factors().iter().map(|d| d.to_string()).collect()
}

fn verdict_block(v: &MethodVerdicts) -> CoreResult<VerdictBlock> {
    let value = v.value()?;
    Ok(VerdictBlock {
        verdict: value,
        methods_agree: v.agree(),
        methods: v
            .verdicts
            .iter()
            .map(|(name, verdict)| MethodEntry {
                name: name.clone(),
                verdict: *verdict,
            })
            .collect(),
    })
}

fn basis_hash(o: &Order) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(o.lattice().den().to_string().as_bytes());
    let num = o.lattice().basis_num();
    for i in 0..num.rows() {
        for c in num.row(i) {
            hasher.update(b"|");
            hasher.update(c.to_string().as_bytes());
        }
    }
    let digest = hasher.finalize();
    digest
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn claim_name(b: ClaimBasis) -> &'static str {
    match b {
        ClaimBasis::UnconditionalMaximalOrder => "unconditional-maximal-order",
        ClaimBasis::GorensteinThm => "gorenstein",
        ClaimBasis::Type2Thm => "type2",
        ClaimBasis::IdealQuotient => "ideal-quotient",
    }
}

fn regime_name(r: FunctorRegime) -> &'static str {
    match r {
        FunctorRegime::Ord => "Ord",
        FunctorRegime::Cs => "CS",
        FunctorRegime::None => "none",
    }
}

/// Full classification of one validated squarefree class.
pub fn build_report(w: WeilPoly, opts: &ReportOptions) -> CoreResult<ClassReport> {
    let t0 = Instant::now();
    let g = w.genus();
    let q = w.q().clone();
    let h_strings: Vec<String> = (0..=2 * g).map(|i| w.h().coeff(i).to_string()).collect();
    let poly_vec: Vec<BigInt> = (0..=2 * g).map(|i| w.h().coeff(i)).collect();
    let flags_base = (w.is_squarefree(), w.is_ordinary(), w.has_real_roots());
    let point_count = w.point_count(opts.n);
    let c = ClassData::new(w)?;
    let validate_ms = t0.elapsed().as_millis();

    let t1 = Instant::now();
    let cyclic = verdict_block(&c.cyclic_verdicts()?)?;
    let rich = verdict_block(&c.rich_verdicts()?)?;
    let admissible: Vec<Vec<String>> = c
        .admissible_groups()
        .iter()
        .map(group_strings)
        .collect();
    let classify_ms = t1.elapsed().as_millis();

    let t2 = Instant::now();
    let ok = c.maximal_order()?.clone();
    let conductor_index = c.conductor_index()?;
    let mut orders_truncated = false;
    let (orders, overorder_count): (Vec<Order>, Option<usize>) = match opts.orders {
        OrderScope::Maximal => (vec![ok.clone()], None),
        OrderScope::Frobenius => (vec![c.frobenius_order().clone()], None),
        OrderScope::All => match c.overorders_capped(opts.enum_cap) {
            Ok(list) => {
                let count = list.len();
                (list, Some(count))
            }
            Err(CoreError::BoundExceeded { .. }) => {
                orders_truncated = true;
                (vec![c.frobenius_order().clone(), ok.clone()], None)
            }
            Err(e) => return Err(e),
        },
    };

    let conj = c.conjugation();
    let mut per_order = Vec::with_capacity(orders.len());
    for s in &orders {
        let res = group_from_order(&c, s, opts.n)?;
        let searched = if res.warning {
            // Rigidity fails: exhibit the distinct groups reachable by the
            // bounded ideal search.
            let depth = match opts.search_depth {
                Some(d) => d,
                None => avfq::points::default_search_depth(&c, s)?,
            };
            match search_groups_for_multiplicator(&c, s, depth, opts.enum_cap) {
                Ok(set) => Some(set),
                Err(CoreError::BoundExceeded { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        per_order.push(OrderReport {
            basis_hash: basis_hash(s),
            index_in_maximal: s.index_in(&ok)?.to_string(),
            conjugation_stable: s.conjugate(conj) == *s,
            is_frobenius_order: s == c.frobenius_order(),
            is_maximal: s == &ok,
            primes_over_one_minus_pi_n: res
                .hypotheses
                .iter()
                .map(|h| PrimeReport {
                    p: h.p.to_string(),
                    residue_degree: h.residue_degree,
                    cm_type: h.cm_type,
                })
                .collect(),
            group: group_strings(&res.group),
            basis_of_claim: claim_name(res.basis).to_string(),
            warning: res.warning,
            searched_groups: searched
                .map(|set: BTreeSet<AbGroup>| set.iter().map(group_strings).collect()),
        });
    }
    let orders_ms = t2.elapsed().as_millis();

    let t3 = Instant::now();
    let regime = avfq::points::functor_regime(&c);
    let mut obstruction = None;
    if regime != FunctorRegime::None && !orders_truncated {
        for s_end in &orders {
            if let Some((s, pr)) = not_self_dual_witness(&c, s_end)? {
                obstruction = Some(ObstructionReport {
                    order_hash: basis_hash(&s),
                    end_ring_hash: basis_hash(s_end),
                    prime: PrimeReport {
                        p: pr.p().to_string(),
                        residue_degree: pr.residue_degree(),
                        cm_type: s.cm_type_at(&pr),
                    },
                });
                break;
            }
        }
    }
    let mut sample_dual_pairs = Vec::new();
    for s in &orders {
        let r_elem = c.one_minus_pi_pow(opts.n);
        let grp = quotient_group(s.lattice(), &r_elem)?;
        let dual = dual_group(&c, s.lattice(), opts.n)?;
        sample_dual_pairs.push(DualPair {
            order_hash: basis_hash(s),
            group: group_strings(&grp),
            dual_group: group_strings(&dual),
        });
    }
    let coprime_group = avfq::points::coprime_conductor_group(&c)?;
    let mut counterexamples = Vec::new();
    if !orders_truncated {
        for s in &orders {
            if s.conjugate(conj) != *s {
                continue;
            }
            let cond = s.conductor(&ok)?;
            let index = s.lattice().index_of(&cond)?;
            for (p, _) in avfq::arith::factor_integer(&index) {
                for pr in s.primes_above(&p) {
                    if !pr.contains_lattice(&cond)
                        || pr.is_conjugation_stable(conj)
                        || s.cm_type_at(&pr) != 2
                    {
                        continue;
                    }
                    // Record each conjugate pair once, by canonical order.
                    if pr.conjugate_lattice(conj) < *pr.lattice() {
                        continue;
                    }
                    let (d, m, _ideal) =
                        avfq::points::self_dual_counterexample_ideal(&c, s, &pr);
                    counterexamples.push(CounterexampleReport {
                        order_hash: basis_hash(s),
                        prime: PrimeReport {
                            p: pr.p().to_string(),
                            residue_degree: pr.residue_degree(),
                            cm_type: 2,
                        },
                        d: d.to_string(),
                        m,
                    });
                }
            }
        }
    }
    let duality_ms = t3.elapsed().as_millis();

    Ok(ClassReport {
        schema_version: SCHEMA_VERSION,
        label: opts.label.clone().or_else(|| {
            Some(lmfdb_label(g, &q, &poly_vec))
        }),
        q: q.to_string(),
        g,
        h: h_strings,
        n: opts.n,
        point_count: point_count.to_string(),
        flags: Flags {
            squarefree: flags_base.0,
            ordinary: flags_base.1,
            has_real_roots: flags_base.2,
            functor_regime: regime_name(regime).to_string(),
        },
        cyclic,
        rich,
        admissible_groups: admissible,
        conductor_index: conductor_index.to_string(),
        overorder_count,
        orders_truncated,
        per_order,
        duality: DualityReport {
            self_dual_obstruction: obstruction,
            sample_dual_pairs,
            coprime_conductor_group: coprime_group.as_ref().map(group_strings),
            cmtype2_counterexamples: counterexamples,
        },
        timings: Timings {
            validate_ms,
            classify_ms,
            orders_ms,
            duality_ms,
            total_ms: t0.elapsed().as_millis(),
        },
    })
}

/// Plain-text rendering for terminal use.
pub fn render_text(r: &ClassReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(
        &mut out,
        format!(
            "class {} over F_{} (g = {})",
            r.label.as_deref().unwrap_or("?"),
            r.q,
            r.g
        ),
    );
    push(&mut out, format!("  h = [{}] (ascending)", r.h.join(", ")));
    push(
        &mut out,
        format!(
            "  #A(F_q^{}) = {}   squarefree={} ordinary={} regime={}",
            r.n, r.point_count, r.flags.squarefree, r.flags.ordinary, r.flags.functor_regime
        ),
    );
    let fmt_methods = |b: &VerdictBlock| {
        b.methods
            .iter()
            .map(|m| format!("{}={}", m.name, m.verdict))
            .collect::<Vec<_>>()
            .join(" ")
    };
    push(
        &mut out,
        format!(
            "  cyclic: {} ({})   rich: {} ({})",
            r.cyclic.verdict,
            fmt_methods(&r.cyclic),
            r.rich.verdict,
            fmt_methods(&r.rich)
        ),
    );
    push(
        &mut out,
        format!(
            "  admissible groups ({}): {}",
            r.admissible_groups.len(),
            r.admissible_groups
                .iter()
                .map(|g| render_group(g))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    push(
        &mut out,
        format!(
            "  [O_K : R] = {}   overorders: {}{}",
            r.conductor_index,
            r.overorder_count
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into()),
            if r.orders_truncated {
                " (truncated: enumeration over cap)"
            } else {
                ""
            }
        ),
    );
    for o in &r.per_order {
        let tag = if o.is_maximal {
            " O_K"
        } else if o.is_frobenius_order {
            " R"
        } else {
            ""
        };
        push(
            &mut out,
            format!(
                "  order {}{} [O_K:S]={} conj-stable={} group={} claim={}{}",
                o.basis_hash,
                tag,
                o.index_in_maximal,
                o.conjugation_stable,
                render_group(&o.group),
                o.basis_of_claim,
                if o.warning { " (warning: not rigid)" } else { "" }
            ),
        );
        if let Some(sg) = &o.searched_groups {
            push(
                &mut out,
                format!(
                    "    searched groups: {}",
                    sg.iter().map(|g| render_group(g)).collect::<Vec<_>>().join(", ")
                ),
            );
        }
        for p in &o.primes_over_one_minus_pi_n {
            push(
                &mut out,
                format!(
                    "    prime over (1-pi^n): p={} f={} type={}",
                    p.p, p.residue_degree, p.cm_type
                ),
            );
        }
    }
    match &r.duality.self_dual_obstruction {
        Some(ob) => push(
            &mut out,
            format!(
                "  self-duality obstruction: order {} at p={} (f={}, type {}) applies to end ring {}",
                ob.order_hash, ob.prime.p, ob.prime.residue_degree, ob.prime.cm_type, ob.end_ring_hash
            ),
        ),
        None => push(&mut out, "  self-duality obstruction: none found".into()),
    }
    for pair in &r.duality.sample_dual_pairs {
        push(
            &mut out,
            format!(
                "  dual pair at {}: A -> {}   A^dual -> {}",
                pair.order_hash,
                render_group(&pair.group),
                render_group(&pair.dual_group)
            ),
        );
    }
    if let Some(gp) = &r.duality.coprime_conductor_group {
        push(
            &mut out,
            format!("  coprime-conductor group: {}", render_group(gp)),
        );
    }
    for ce in &r.duality.cmtype2_counterexamples {
        push(
            &mut out,
            format!(
                "  type-2 prime not fixed by conjugation at order {}: p={} f={};                  locally self-dual ideal d*S^t + pbar^m with d={} m={}",
                ce.order_hash, ce.prime.p, ce.prime.residue_degree, ce.d, ce.m
            ),
        );
    }
    out
}

fn render_group(factors: &[String]) -> String {
    if factors.is_empty() {
        "trivial".into()
    } else {
        factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}
