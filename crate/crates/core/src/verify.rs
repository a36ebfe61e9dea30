//! Per-class verification of the p-group statements about conjugation racks:
//!
//! * in a p-group that is not cyclic, every class generates a proper subgroup;
//! * a class is connected iff it is central;
//! * the maximal subracks of a class are the complements of single
//!   `⟨C⟩`-orbits;
//! * the orbit-union map is a closure operator whose image is `2^[m]`;
//! * the order complex of the proper part has the reduced homology of the
//!   `(m−2)`-sphere.
//!
//! The sphere statement is checked on reduced integral homology together with
//! the closure-operator mechanism; homotopy equivalence itself is not
//! machine-checked.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::complex::{order_complex, EulerCharacteristic, OrderComplex};
use crate::group::{AssociativityCheck, ConjClass, FiniteGroup, PGroup, Subgroup};
use crate::homology::{is_homology_sphere, reduced_homology_with, HomologyProfile, DEFAULT_DENSIFY_THRESHOLD};
use crate::poset::{
    closure_phi, enumerate_subracks, maximal_subracks_bruteforce, maximal_subracks_via_lemma, phi_image, PhiImage,
    PosetError, SubrackPoset,
};
use crate::rack::{conjugation_rack, orbit_decomposition, OrbitDecomposition, Rack};

pub const REPORT_FORMAT: u32 = 1;

pub const SCOPE: &str = "sphere claims are verified on reduced integral homology plus the \
closure-operator mechanism (phi laws and Boolean image); homotopy equivalence is not machine-checked";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails { witness: String },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    fn from_check(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails { witness: witness() }
        }
    }

    /// Short form used in text reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails { .. } => "FAILS",
            Verdict::NotApplicable { .. } => "n/a",
        }
    }

    fn detail(&self) -> Option<&str> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
            Verdict::NotApplicable { reason } => Some(reason),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Classes larger than this are not enumerated.
    pub max_class_size: usize,
    pub densify_threshold: usize,
    /// Evaluate the generation and connectedness statements on nilpotent
    /// groups that are not p-groups, labelled experimental.
    pub experimental_nilpotent: bool,
    pub record_timings: bool,
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_class_size: 20,
            densify_threshold: DEFAULT_DENSIFY_THRESHOLD,
            experimental_nilpotent: false,
            record_timings: false,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTimings {
    pub enumerate_ms: f64,
    pub homology_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub index: usize,
    pub representative: String,
    pub members: Vec<String>,
    pub size: usize,
    pub element_order: usize,
    pub is_central: bool,
    pub connected: bool,
    /// `|⟨C⟩|`
    pub generated_order: usize,
    pub m: usize,
    /// Orbits of `⟨C⟩` on the class, as element labels.
    pub orbits: Vec<Vec<String>>,
    pub cap_exceeded: bool,
    pub subrack_count: Option<usize>,
    pub f_vector: Option<Vec<usize>>,
    pub reduced_euler: Option<i64>,
    pub homology: Option<HomologyProfile>,
    /// Degree `m − 2` at which the class should be a homology sphere.
    pub sphere_degree: isize,
    /// Whether the homology is that of the `(m−2)`-sphere, recorded for every
    /// group whether or not the statement applies.
    pub homology_is_sphere: Option<bool>,
    pub proper_generation: Verdict,
    pub connected_iff_central: Verdict,
    pub maximal_subracks: Verdict,
    pub phi_closure_laws: Verdict,
    pub boolean_image: Verdict,
    pub euler_consistency: Verdict,
    pub sphere: Verdict,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<ClassTimings>,
}

impl ClassReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("proper-generation", &self.proper_generation),
            ("connected-iff-central", &self.connected_iff_central),
            ("maximal-subracks", &self.maximal_subracks),
            ("phi-closure-laws", &self.phi_closure_laws),
            ("boolean-image", &self.boolean_image),
            ("euler-consistency", &self.euler_consistency),
            ("sphere", &self.sphere),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub order: usize,
    pub p_group: PGroup,
    pub cyclic: bool,
    pub abelian: bool,
    pub nilpotent: bool,
    pub associativity: AssociativityCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub format: u32,
    pub group: GroupDescriptor,
    pub scope: String,
    pub classes: Vec<ClassReport>,
    pub overall: Verdict,
}

impl GroupReport {
    pub fn any_cap_exceeded(&self) -> bool {
        self.classes.iter().any(|c| c.cap_exceeded)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let g = &self.group;
        let p = match g.p_group {
            PGroup::Trivial => "trivial (p-group for every p)".to_string(),
            PGroup::Prime(p) => format!("{p}-group"),
            PGroup::No => "not a p-group".to_string(),
        };
        let _ = writeln!(out, "group {} (order {}, {p})", g.name, g.order);
        let _ = writeln!(out, "scope: {}", self.scope);
        for c in &self.classes {
            let _ = writeln!(
                out,
                "class {} [{}] size={} central={} connected={} |<C>|={} m={} sphere-degree={}",
                c.index, c.representative, c.size, c.is_central, c.connected, c.generated_order, c.m, c.sphere_degree
            );
            if let Some(h) = &c.homology {
                let _ = writeln!(
                    out,
                    "  subracks={} f-vector={:?} reduced-euler={} homology: {}",
                    c.subrack_count.unwrap_or(0),
                    c.f_vector.as_deref().unwrap_or(&[]),
                    c.reduced_euler.unwrap_or(0),
                    h.describe()
                );
            }
            for (name, v) in c.verdicts() {
                match v.detail() {
                    Some(d) => {
                        let _ = writeln!(out, "  {name}: {} ({d})", v.tag());
                    }
                    None => {
                        let _ = writeln!(out, "  {name}: {}", v.tag());
                    }
                }
            }
            for n in &c.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            if let Some(t) = &c.timings {
                let _ = writeln!(
                    out,
                    "  timings: enumerate {:.3} ms, homology {:.3} ms, total {:.3} ms",
                    t.enumerate_ms, t.homology_ms, t.total_ms
                );
            }
        }
        let _ = writeln!(out, "overall: {}", self.overall.tag());
        if let Some(d) = self.overall.detail() {
            let _ = writeln!(out, "  {d}");
        }
        out
    }
}

/// Everything computed for one class, kept for callers that want the raw
/// structures rather than a report.
#[derive(Debug, Clone)]
pub struct ClassAnalysis {
    pub class: ConjClass,
    pub rack: Rack,
    pub generated: Subgroup,
    pub orbits: OrbitDecomposition,
    pub poset: Result<SubrackPoset, PosetError>,
    pub complex: Option<OrderComplex>,
    pub homology: Option<HomologyProfile>,
    pub phi_image: Option<Result<PhiImage, PosetError>>,
    enumerate_ms: f64,
    homology_ms: f64,
}

pub fn analyze_class(group: &FiniteGroup, class: &ConjClass, opts: &VerifyOptions) -> ClassAnalysis {
    let rack = conjugation_rack(group, class).expect("conjugacy classes are conjugation-closed");
    let generated = group.subgroup_generated(&class.members);
    let orbits = orbit_decomposition(&rack);
    let t0 = Instant::now();
    let poset = enumerate_subracks(&rack, opts.max_class_size);
    let enumerate_ms = t0.elapsed().as_secs_f64() * 1e3;
    let t1 = Instant::now();
    let (complex, homology, image) = match &poset {
        Ok(p) => {
            let k = order_complex(p);
            let h = reduced_homology_with(&k, opts.densify_threshold);
            (Some(k), Some(h), Some(phi_image(&rack, p, &orbits)))
        }
        Err(_) => (None, None, None),
    };
    let homology_ms = t1.elapsed().as_secs_f64() * 1e3;
    ClassAnalysis {
        class: class.clone(),
        rack,
        generated,
        orbits,
        poset,
        complex,
        homology,
        phi_image: image,
        enumerate_ms,
        homology_ms,
    }
}

pub fn verify_group(group: &FiniteGroup, name: &str, opts: &VerifyOptions) -> GroupReport {
    let classes = group.conjugacy_classes();
    let run = |(i, c): (usize, &ConjClass)| verify_class(group, i, c, opts);
    let reports: Vec<ClassReport> = if opts.parallel {
        classes.par_iter().enumerate().map(run).collect()
    } else {
        classes.iter().enumerate().map(run).collect()
    };

    let failures: Vec<String> = reports
        .iter()
        .flat_map(|c| {
            c.verdicts()
                .into_iter()
                .filter(|(_, v)| v.fails())
                .map(move |(n, _)| format!("class {} [{}]: {n}", c.index, c.representative))
        })
        .collect();
    let any_holds = reports.iter().any(|c| c.verdicts().iter().any(|(_, v)| v.holds()));
    let overall = if !failures.is_empty() {
        Verdict::Fails { witness: failures.join("; ") }
    } else if any_holds {
        Verdict::Holds
    } else {
        Verdict::NotApplicable { reason: "no statement applies to this group".into() }
    };

    GroupReport {
        format: REPORT_FORMAT,
        group: GroupDescriptor {
            name: name.to_string(),
            order: group.order(),
            p_group: group.is_p_group(),
            cyclic: group.is_cyclic(),
            abelian: group.is_abelian(),
            nilpotent: group.is_nilpotent(),
            associativity: group.associativity(),
        },
        scope: SCOPE.to_string(),
        classes: reports,
        overall,
    }
}

/// The generation statement for one class: `⟨C⟩ = G` is allowed only when
/// G is cyclic. Inside a p-group, cyclic already means cyclic of prime power
/// order.
pub fn proper_generation_verdict(group: &FiniteGroup, generated: &Subgroup, notes: &mut Vec<String>) -> Verdict {
    if generated.order() < group.order() {
        Verdict::Holds
    } else if group.is_cyclic() {
        notes.push("<C> = G is permitted: G is cyclic of prime power order".into());
        Verdict::Holds
    } else {
        Verdict::Fails { witness: format!("<C> is all of G (order {})", group.order()) }
    }
}

/// Per-class verdicts for the generation statement only.
pub fn verify_lemma_proper(group: &FiniteGroup) -> Vec<Verdict> {
    group
        .conjugacy_classes()
        .iter()
        .map(|c| {
            if !group.is_p_group().is_p_group() {
                return Verdict::NotApplicable { reason: "G is not a p-group".into() };
            }
            proper_generation_verdict(group, &group.subgroup_generated(&c.members), &mut Vec::new())
        })
        .collect()
}

fn labels(group: &FiniteGroup, rack: &Rack, s: &BitSet) -> Vec<String> {
    rack.to_group_ids(s).expect("conjugation rack").into_iter().map(|g| group.label(g)).collect()
}

fn show(group: &FiniteGroup, rack: &Rack, s: &BitSet) -> String {
    format!("{{{}}}", labels(group, rack, s).join(", "))
}

fn verify_class(group: &FiniteGroup, index: usize, class: &ConjClass, opts: &VerifyOptions) -> ClassReport {
    let start = Instant::now();
    let a = analyze_class(group, class, opts);
    let p_group = group.is_p_group().is_p_group();
    let experimental = !p_group && opts.experimental_nilpotent && group.is_nilpotent();
    let mut notes = Vec::new();

    let size = class.len();
    let rep = class.representative;
    let is_central = group.is_central(rep);
    let m = a.orbits.m();
    let connected = m == 1;
    let sphere_degree = m as isize - 2;
    let not_p = |informational: &Verdict| Verdict::NotApplicable {
        reason: format!("G is not a p-group (informational: {})", informational.tag()),
    };
    // Applies `not_p` to a verdict when the p-group hypothesis fails.
    let guard = |v: Verdict| if p_group { v } else { not_p(&v) };

    let proper_generation = {
        let v = proper_generation_verdict(group, &a.generated, &mut notes);
        if p_group {
            v
        } else if experimental {
            notes.push(format!("experimental nilpotent check of generation: {}", v.tag()));
            v
        } else {
            not_p(&v)
        }
    };

    let connected_iff_central = {
        let v =
            Verdict::from_check(connected == is_central, || format!("central={is_central} but connected={connected}"));
        if p_group {
            v
        } else if experimental {
            notes.push(format!("experimental nilpotent check of connectedness: {}", v.tag()));
            v
        } else {
            not_p(&v)
        }
    };

    let cap_reason = |e: &PosetError| Verdict::NotApplicable { reason: e.to_string() };
    let (maximal_subracks, phi_closure_laws, boolean_image, euler_consistency, sphere);
    let (mut subrack_count, mut f_vector, mut reduced_euler, mut homology_is_sphere) = (None, None, None, None);
    match &a.poset {
        Err(e) => {
            notes.push(format!("enumeration skipped: {e}"));
            maximal_subracks = cap_reason(e);
            phi_closure_laws = cap_reason(e);
            boolean_image = cap_reason(e);
            euler_consistency = cap_reason(e);
            sphere = cap_reason(e);
        }
        Ok(poset) => {
            subrack_count = Some(poset.len());

            maximal_subracks = if !p_group {
                Verdict::NotApplicable { reason: "G is not a p-group".into() }
            } else if m < 2 {
                notes.push("single orbit: maximal-subrack statement is vacuous and was bypassed".into());
                Verdict::NotApplicable { reason: "m = 1, statement vacuous".into() }
            } else {
                let mut lemma = maximal_subracks_via_lemma(group, &a.orbits).expect("p-group");
                let mut brute = maximal_subracks_bruteforce(poset);
                lemma.sort();
                brute.sort();
                Verdict::from_check(lemma == brute, || {
                    let l: Vec<String> = lemma.iter().map(|s| show(group, &a.rack, s)).collect();
                    let b: Vec<String> = brute.iter().map(|s| show(group, &a.rack, s)).collect();
                    format!("predicted [{}] but found [{}]", l.join(" "), b.join(" "))
                })
            };

            phi_closure_laws = guard(check_phi_laws(group, &a.rack, poset, &a.orbits, size > 1));

            boolean_image = guard(match a.phi_image.as_ref().expect("poset enumerated") {
                Ok(img) => Verdict::from_check(img.orbit_subsets.len() == 1 << m, || "size mismatch".into()),
                Err(e) => Verdict::Fails { witness: e.to_string() },
            });

            let k = a.complex.as_ref().expect("complex");
            let h = a.homology.as_ref().expect("homology");
            let fv = k.f_vector();
            let chi = EulerCharacteristic::from_f_vector(&fv).reduced;
            let expected_chi = if sphere_degree.rem_euclid(2) == 0 { 1 } else { -1 };
            euler_consistency =
                guard(Verdict::from_check(chi == h.alternating_betti_sum() && chi == expected_chi, || {
                    format!(
                        "reduced euler {chi}, alternating betti sum {}, sphere value {expected_chi}",
                        h.alternating_betti_sum()
                    )
                }));
            let is_sphere = is_homology_sphere(h, sphere_degree);
            sphere =
                guard(Verdict::from_check(is_sphere, || format!("expected S^{sphere_degree}, found {}", h.describe())));
            f_vector = Some(fv);
            reduced_euler = Some(chi);
            homology_is_sphere = Some(is_sphere);
        }
    }

    if m == 1 {
        notes.push("m = 1: the order complex is empty and read as the (-1)-sphere".into());
    }

    let timings = opts.record_timings.then(|| ClassTimings {
        enumerate_ms: a.enumerate_ms,
        homology_ms: a.homology_ms,
        total_ms: start.elapsed().as_secs_f64() * 1e3,
    });

    ClassReport {
        index,
        representative: group.label(rep),
        members: class.members.iter().map(|g| group.label(g)).collect(),
        size,
        element_order: group.element_order(rep),
        is_central,
        connected,
        generated_order: a.generated.order(),
        m,
        orbits: a.orbits.orbits.iter().map(|o| labels(group, &a.rack, o)).collect(),
        cap_exceeded: a.poset.is_err(),
        subrack_count,
        f_vector,
        reduced_euler,
        homology: a.homology.clone(),
        sphere_degree,
        homology_is_sphere,
        proper_generation,
        connected_iff_central,
        maximal_subracks,
        phi_closure_laws,
        boolean_image,
        euler_consistency,
        sphere,
        notes,
        timings,
    }
}

/// Extensive, monotone (checked on cover pairs, which gives all comparable
/// pairs by transitivity), idempotent, lands in the poset, and only the whole
/// class maps to the whole class when `strict_top` is set.
fn check_phi_laws(
    group: &FiniteGroup,
    rack: &Rack,
    poset: &SubrackPoset,
    orbits: &OrbitDecomposition,
    strict_top: bool,
) -> Verdict {
    let phi: Vec<BitSet> = poset.elements.iter().map(|s| closure_phi(rack, s, orbits)).collect();
    let top = &poset.elements[poset.top];
    for (s, fs) in poset.elements.iter().zip(&phi) {
        if !s.is_subset(fs) {
            return Verdict::Fails { witness: format!("not extensive at {}", show(group, rack, s)) };
        }
        if &closure_phi(rack, fs, orbits) != fs {
            return Verdict::Fails { witness: format!("not idempotent at {}", show(group, rack, s)) };
        }
        if !rack.is_closed(fs) {
            return Verdict::Fails { witness: format!("phi({}) is not a subrack", show(group, rack, s)) };
        }
        if strict_top && fs == top && s != top {
            return Verdict::Fails { witness: format!("phi({}) is the whole class", show(group, rack, s)) };
        }
    }
    for (x, y) in poset.hasse_edges() {
        if !phi[x].is_subset(&phi[y]) {
            return Verdict::Fails {
                witness: format!(
                    "not monotone on {} < {}",
                    show(group, rack, &poset.elements[x]),
                    show(group, rack, &poset.elements[y])
                ),
            };
        }
    }
    Verdict::Holds
}
