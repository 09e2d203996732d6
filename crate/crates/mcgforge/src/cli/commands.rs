use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::config::Config;
use super::report::Report;
use super::*;
use crate::error::{Error, Result};
use crate::geometry::{
    coset_volume_report, filling_volume_bounds, independence_certificate, parse_volume_records, qhyp_derive,
    FactStore, Manifold, Precision, VolumeRecord,
};
use crate::links::family_record;
use crate::mcg::{
    estimate_distance, growth_certify, growth_estimate, penner_certify, CertBuilder, CertKind, Certificate, Fact,
    TwistWord,
};
use crate::openbook::{abelian_coset, free_coset, penner_stabilize, OpenBook};
use crate::surface::{
    chain_system, intersection, slope_curve, standard_page, torus, MultiCurve, SurfaceSig, Triangulation,
};

/// Checks run under `--replay`; failures are collected, not fatal.
pub struct Replays {
    enabled: bool,
    pub failures: Vec<String>,
}

impl Replays {
    fn check(&mut self, report: &mut Report, label: &str, r: impl FnOnce() -> Result<()>) {
        if !self.enabled {
            return;
        }
        let res = r();
        report.record("replay", json!({ "label": label, "ok": res.is_ok() }));
        if let Err(e) = res {
            self.failures.push(format!("{label}: {e}"));
        }
    }
}

fn input_err(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn dispatch(v: &Verb, cfg: &Config, replay: bool) -> Result<(Report, Vec<String>)> {
    let mut rp = Replays { enabled: replay, failures: Vec::new() };
    let report = match v {
        Verb::Surface(SurfaceCmd::Info(s)) => surface_info(*s)?,
        Verb::Distance(a) => distance(a, cfg, &mut rp)?,
        Verb::Coset(CosetCmd::Abelian(a)) => coset_abelian(a, cfg, &mut rp)?,
        Verb::Coset(CosetCmd::Free(a)) => coset_free(a, cfg, &mut rp)?,
        Verb::Link(LinkCmd::Family(a)) => link_family(a, &mut rp)?,
        Verb::Certify(CertifyCmd::Penner(a)) => certify_penner(a, &mut rp)?,
        Verb::Certify(CertifyCmd::Growth(a)) => certify_growth(a, cfg, &mut rp)?,
        Verb::Certify(CertifyCmd::Independence(a)) => certify_independence(a, cfg, &mut rp)?,
        Verb::Certify(CertifyCmd::Filling(a)) => certify_filling(a, cfg, &mut rp)?,
        Verb::Certify(CertifyCmd::Qhyp(a)) => certify_qhyp(a, &mut rp)?,
        Verb::Ingest(IngestCmd::Volumes(a)) => ingest_volumes(a, cfg, &mut rp)?,
    };
    Ok((report, rp.failures))
}

fn cert_value(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificate serializes")
}

fn sig_of(s: SigArgs) -> SurfaceSig {
    SurfaceSig::new(s.genus, s.boundary)
}

fn surface_info(s: SigArgs) -> Result<Report> {
    let sig = sig_of(s);
    let page = standard_page(sig)?;
    let t = &page.tri;
    let mut r = Report::new("surface info");
    r.record(
        "surface",
        json!({
            "genus": sig.genus,
            "boundary": sig.boundary,
            "euler": sig.euler(),
            "edges": t.num_edges(),
            "triangles": t.num_triangles(),
            "homology_rank": sig.homology_rank(),
            "complexity": 3 * sig.genus as i64 - 3 + sig.boundary as i64,
            "non_sporadic": sig.is_non_sporadic(),
            "boundary_cycles": t.boundary_cycles().len(),
            "triangulation": t.to_text(),
        }),
    );
    if sig.boundary == 1 && sig.genus >= 1 {
        let ch = chain_system(sig.genus)?;
        let named: BTreeMap<String, String> = ch
            .a
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("a{}", i + 1), c.to_text()))
            .chain(ch.b.iter().enumerate().map(|(i, c)| (format!("b{}", i + 1), c.to_text())))
            .chain(ch.c.iter().enumerate().map(|(i, c)| (format!("c{}", i + 1), c.to_text())))
            .collect();
        r.record("chain_system", json!({ "curves": named, "length": ch.sequence().len() }));
    }
    r.line(format!("{sig}: euler {}, {} edges, {} triangles", sig.euler(), t.num_edges(), t.num_triangles()));
    Ok(r)
}

fn parse_curve(tri: &Arc<Triangulation>, s: &str) -> Result<MultiCurve> {
    let s = s.trim();
    if s.starts_with('C') {
        return MultiCurve::from_text(tri.clone(), s);
    }
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("curve {s:?}: expected p/q or C w0,w1,...")))?;
    let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad slope {s:?}")))?;
    let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad slope {s:?}")))?;
    slope_curve(tri, p, q)
}

fn distance(a: &DistanceArgs, cfg: &Config, rp: &mut Replays) -> Result<Report> {
    let sig = sig_of(a.sig);
    let tri = if sig == SurfaceSig::new(1, 1) { torus() } else { standard_page(sig)?.tri };
    let ca = parse_curve(&tri, &a.a)?;
    let cb = parse_curve(&tri, &a.b)?;
    let wb = a.weight_bound.unwrap_or(cfg.weight_bound);
    let cap = a.cap.unwrap_or(cfg.cap);
    let est = estimate_distance(&ca, &cb, cap, wb)?;
    let i = intersection(&ca, &cb)?;
    let mut r = Report::new("distance");
    let lemma = est.upper.map(|d| u64::from(d) <= 2 * i + 1);
    r.record(
        "distance",
        json!({
            "a": ca.to_text(), "b": cb.to_text(), "intersection": i,
            "lower": est.lower, "upper": est.upper, "exact": est.exact(),
            "weight_bound": wb, "cap": cap, "distance_at_most_2i_plus_1": lemma,
        }),
    );
    let mut cbld = CertBuilder::new(CertKind::DistanceBound, &tri);
    cbld.curve("a", &ca).curve("b", &cb);
    cbld.premise(
        "curve graph distance bounds",
        Fact::Distance { a: "a".into(), b: "b".into(), lower: est.lower, upper: est.upper, weight_bound: wb, cap },
    );
    cbld.payload("intersection", json!(i));
    let cert = cbld.finish();
    rp.check(&mut r, "distance", || cert.replay());
    r.certificate("DistanceBound", Some(cert_value(&cert)));
    r.line(match est.exact() {
        Some(d) => format!("d(a, b) = {d}, i(a, b) = {i}"),
        None => format!("{} <= d(a, b) <= {:?}, i(a, b) = {i}", est.lower, est.upper),
    });
    Ok(r)
}

fn open_book_record(ob: &OpenBook, base_len: usize) -> Value {
    let page = ob.page();
    json!({
        "base_genus": ob.base_genus,
        "page": { "genus": page.genus, "boundary": page.boundary },
        "base_word_length": base_len,
        "monodromy_length": ob.monodromy.len(),
        "stabilizations": ob.stabilizations,
        "framings": ob.ledger.entries,
        "monodromy": ob.monodromy.to_text(),
    })
}

fn volume_section(r: &mut Report, v: &VolumeArgs, cfg: &Config) -> Result<()> {
    if let Some(n) = v.norm_upper {
        let rep = coset_volume_report(n, v.volume_constant.or(cfg.volume_constant))?;
        r.line(rep.statement.clone());
        r.record("volume_bound", rep);
    }
    Ok(())
}

fn coset_abelian(a: &AbelianArgs, cfg: &Config, rp: &mut Replays) -> Result<Report> {
    let exps = if a.exps.is_empty() { vec![1; a.k as usize] } else { a.exps.clone() };
    let base = OpenBook::penner_base(a.g)?;
    let ob = penner_stabilize(&base, a.k)?;
    let ab = abelian_coset(&ob, &exps)?;
    let mut r = Report::new("coset abelian");
    r.record("open_book", open_book_record(&ab.open_book, base.monodromy.len()));
    for s in &ab.stallings {
        r.record(
            "stallings_curve",
            json!({
                "id": s.id, "summands": s.summands, "curve": s.curve.to_text(),
                "homology": s.homology, "framing": s.framing, "arc": s.arc,
            }),
        );
    }
    let gens: Vec<Value> = ab.spec.generators.iter().map(|(id, _, n)| json!({ "curve": id, "exponent": n })).collect();
    r.record(
        "coset",
        json!({ "kind": "abelian", "rank": ab.rank(), "generators": gens, "notes": ab.spec.notes, "element": ab.word.to_text() }),
    );
    match &ab.base_certificate {
        Some(c) => {
            rp.check(&mut r, "monodromy", || c.replay());
            r.certificate("monodromy", Some(cert_value(c)));
        }
        None => r.certificate("monodromy", None),
    }
    match &ab.long_morton {
        Ok(c) => {
            rp.check(&mut r, "long_morton", || c.replay());
            r.certificate("long_morton", Some(cert_value(c)));
        }
        Err(f) => {
            r.record("long_morton_failure", json!({ "reason": f.to_string() }));
            r.certificate("long_morton", None);
        }
    }
    volume_section(&mut r, &a.volume, cfg)?;
    let page = ab.open_book.page();
    r.line(format!("page {page}, abelian coset of rank {}", ab.rank()));
    Ok(r)
}

fn coset_free(a: &FreeArgs, cfg: &Config, rp: &mut Replays) -> Result<Report> {
    let base = OpenBook::penner_base(a.g)?;
    let ob = penner_stabilize(&base, 4)?;
    let fc = free_coset(&ob)?;
    let mut r = Report::new("coset free");
    r.record("open_book", open_book_record(&fc.open_book, base.monodromy.len()));
    r.record(
        "coset",
        json!({
            "kind": "free", "a": fc.a.to_text(), "b": fc.b.to_text(),
            "intersection": fc.intersection, "arcs": [fc.arcs.0, fc.arcs.1], "notes": fc.spec.notes,
        }),
    );
    rp.check(&mut r, "free_rank2", || fc.certificate.replay());
    r.certificate("free_rank2", Some(cert_value(&fc.certificate)));
    volume_section(&mut r, &a.volume, cfg)?;
    r.line(format!("page {}, free coset with i(a, b) = {}", fc.open_book.page(), fc.intersection));
    Ok(r)
}

fn link_family(a: &FamilyArgs, rp: &mut Replays) -> Result<Report> {
    let triples: Vec<(i64, i64, i64)> = match a.grid {
        Some(n) if n < 1 => return Err(input_err("grid size must be at least 1")),
        Some(n) => (1..=n).flat_map(|l| (1..=n).flat_map(move |m| (1..=n).map(move |k| (l, m, k)))).collect(),
        None => vec![(a.l.expect("required"), a.m.expect("required"), a.k.expect("required"))],
    };
    let mut r = Report::new("link family");
    let mut store = FactStore::new();
    for (l, m, k) in triples {
        let fr = family_record(l, m, k)?;
        let ambient: Manifold = fr.surgery.ambient.parse()?;
        let complement = Manifold::link_complement(ambient.clone(), "L'");
        let d_amb = qhyp_derive(&mut store, &ambient)?;
        let d_comp = qhyp_derive(&mut store, &complement)?;
        r.line(format!(
            "L({l},{m},{k}): genus {}, ambient {}, q-hyperbolic {}",
            fr.genus,
            fr.surgery.ambient,
            d_amb.is_some()
        ));
        let q = d_amb.is_some();
        r.record("family", json!({ "member": fr, "ambient_q_hyperbolic": q }));
        for (label, d) in [(format!("qhyp {ambient}"), d_amb), (format!("qhyp {complement}"), d_comp)] {
            match d {
                Some(d) => {
                    rp.check(&mut r, &label, || d.replay());
                    r.certificate(&label, Some(serde_json::to_value(&d).expect("derivation serializes")));
                }
                None => r.certificate(&label, None),
            }
        }
    }
    Ok(r)
}

type WordSetup = (TwistWord, Vec<MultiCurve>, Vec<MultiCurve>, BTreeMap<String, MultiCurve>);

fn word_setup(a: &WordArgs) -> Result<WordSetup> {
    if let Some(g) = a.chain_genus {
        let ob = OpenBook::penner_base(g)?;
        let pick = |ids: Vec<String>| ids.iter().map(|i| ob.curves[i].clone()).collect::<Vec<_>>();
        let pos = pick(std::iter::once("a1".to_string()).chain((1..g).map(|k| format!("c{k}"))).collect());
        let neg = pick((1..=g).map(|k| format!("b{k}")).collect());
        return Ok((ob.monodromy.clone(), pos, neg, ob.curves.clone()));
    }
    let tri = torus();
    let mut table = BTreeMap::new();
    let entries: Vec<String> =
        if a.curve.is_empty() { vec!["a=1/0".into(), "b=0/1".into()] } else { a.curve.clone() };
    for e in &entries {
        let (id, spec) = e.split_once('=').ok_or_else(|| Error::Parse(format!("curve entry {e:?}: expected id=p/q")))?;
        table.insert(id.trim().to_string(), parse_curve(&tri, spec)?);
    }
    let w = TwistWord::parse(tri, &table, &a.word)?;
    let get = |ids: &[String]| -> Result<Vec<MultiCurve>> {
        ids.iter()
            .map(|i| table.get(i).cloned().ok_or_else(|| Error::Parse(format!("curve {i} not in table"))))
            .collect()
    };
    Ok((w.clone(), get(&a.positive)?, get(&a.negative)?, table))
}

fn certify_penner(a: &WordArgs, rp: &mut Replays) -> Result<Report> {
    let (w, pos, neg, _) = word_setup(a)?;
    let mut r = Report::new("certify penner");
    r.record("word", json!({ "word": w.to_text(), "table": w.table_text(), "page": w.sig().to_string() }));
    let cert = penner_certify(&w, &pos, &neg)?;
    if let Some(c) = &cert {
        rp.check(&mut r, "penner", || c.replay());
    }
    r.line(format!("Penner certificate {}", if cert.is_some() { "issued" } else { "not issued" }));
    r.certificate("penner", cert.as_ref().map(cert_value));
    Ok(r)
}

fn certify_growth(a: &GrowthArgs, cfg: &Config, rp: &mut Replays) -> Result<Report> {
    let (w, _, _, table) = word_setup(&a.word)?;
    let seed = table.get(&a.seed).ok_or_else(|| Error::Parse(format!("seed {} not in table", a.seed)))?;
    let n = a.iterations.unwrap_or(cfg.iterations);
    let rep = growth_estimate(&w, seed, n, cfg.delta)?;
    let mut r = Report::new("certify growth");
    let p = cfg.precision();
    r.record(
        "growth",
        json!({
            "word": w.to_text(), "seed": a.seed, "iterations": n, "delta": cfg.delta,
            "values": rep.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "estimate": rep.estimate.map(|e| p.format(e, true)),
            "verdict": rep.verdict, "heuristic": true,
        }),
    );
    let cert = growth_certify(&w, seed, n, cfg.delta)?;
    if let Some(c) = &cert {
        rp.check(&mut r, "growth", || c.replay());
    }
    r.line(format!("growth estimate {:?}, verdict {:?} (heuristic)", rep.estimate, rep.verdict));
    r.certificate("growth", cert.as_ref().map(cert_value));
    Ok(r)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

fn find_record<'a>(rs: &'a [VolumeRecord], id: &str) -> Result<&'a VolumeRecord> {
    rs.iter().find(|r| r.manifold_id == id).ok_or_else(|| input_err(format!("no record for {id}")))
}

fn independence_value(c: &crate::geometry::IndependenceCertificate, p: Precision) -> Value {
    json!({
        "ids": [c.ids.0, c.ids.1], "volumes": [c.volumes.0, c.volumes.1], "epsilon": c.epsilon,
        "gap_upper": p.format(c.gap, false), "verdict": c.verdict, "reason": c.reason,
    })
}

fn certify_independence(a: &IndependenceArgs, cfg: &Config, rp: &mut Replays) -> Result<Report> {
    let eps = a.epsilon.unwrap_or(cfg.epsilon);
    let (x, y) = match &a.records {
        Some(path) => {
            let rs = parse_volume_records(&read(path)?)?;
            if a.ids.len() != 2 {
                return Err(input_err("--ids needs exactly two manifold ids"));
            }
            (find_record(&rs, &a.ids[0])?.clone(), find_record(&rs, &a.ids[1])?.clone())
        }
        None => (
            VolumeRecord::new("a", a.a.expect("required"), vec![])?,
            VolumeRecord::new("b", a.b.expect("required"), vec![])?,
        ),
    };
    let c = independence_certificate(&x, &y, eps)?;
    let mut r = Report::new("certify independence");
    let v = independence_value(&c, cfg.precision());
    r.record("independence", v.clone());
    rp.check(&mut r, "independence", || {
        let again = independence_certificate(&y, &x, eps)?;
        if again == c { Ok(()) } else { Err(Error::Construction("recomputed certificate differs".into())) }
    });
    r.line(format!(
        "{} vs {}: {} (epsilon = {eps})",
        c.ids.0,
        c.ids.1,
        if c.verdict { "independent" } else { "not certified" }
    ));
    r.certificate("independence", c.verdict.then_some(v));
    Ok(r)
}

fn certify_filling(a: &FillingArgs, cfg: &Config, rp: &mut Replays) -> Result<Report> {
    let (id, vol, lambda) = match &a.records {
        Some(path) => {
            let rs = parse_volume_records(&read(path)?)?;
            let id = a.id.as_deref().expect("required");
            let rec = find_record(&rs, id)?;
            let l = rec.shortest_slope().ok_or_else(|| input_err(format!("{id} lists no cusp slopes")))?;
            (id.to_string(), rec.volume, l)
        }
        None => ("N".to_string(), a.vol.expect("required"), a.lambda.expect("required")),
    };
    let b = filling_volume_bounds(vol, lambda)?;
    let p = cfg.precision();
    let mut r = Report::new("certify filling");
    let v = json!({
        "manifold_id": id, "volume": vol, "lambda": lambda,
        "lower": p.format(b.lower, true), "upper": p.format(b.upper, false),
        "precision": p.digits(),
    });
    r.record("filling", v.clone());
    rp.check(&mut r, "filling", || {
        if filling_volume_bounds(vol, lambda)? == b { Ok(()) } else { Err(Error::Construction("bounds differ".into())) }
    });
    r.line(format!("{} <= vol <= {}", p.format(b.lower, true), p.format(b.upper, false)));
    r.certificate("filling", Some(v));
    Ok(r)
}

fn certify_qhyp(a: &QhypArgs, rp: &mut Replays) -> Result<Report> {
    let mut store = match &a.facts {
        Some(p) if p.exists() => FactStore::from_json(&read(p)?)?,
        _ => FactStore::new(),
    };
    if let Some(s) = &a.shadow {
        store.load_shadow_facts(&read(s)?)?;
    }
    let goal: Manifold = a.goal.parse()?;
    let before = store.facts.len();
    let d = qhyp_derive(&mut store, &goal)?;
    let mut r = Report::new("certify qhyp");
    r.record("goal", json!({ "goal": goal.to_string(), "new_facts": store.facts.len() - before }));
    if let Some(p) = &a.facts {
        std::fs::write(p, store.to_json()).map_err(|e| input_err(format!("cannot write {}: {e}", p.display())))?;
    }
    rp.check(&mut r, "fact_store", || store.replay());
    match &d {
        Some(d) => {
            rp.check(&mut r, "derivation", || d.replay());
            r.line(format!("{goal} is q-hyperbolic by rules {:?}", d.rules()));
        }
        None => r.line(format!("{goal}: no rule applies")),
    }
    r.certificate("qhyp", d.map(|d| serde_json::to_value(d).expect("derivation serializes")));
    Ok(r)
}

fn ingest_volumes(a: &IngestArgs, cfg: &Config, rp: &mut Replays) -> Result<Report> {
    let rs = parse_volume_records(&read(&a.file)?)?;
    let eps = a.epsilon.unwrap_or(cfg.epsilon);
    let p = cfg.precision();
    let mut r = Report::new("ingest volumes");
    for rec in &rs {
        let filling = match rec.shortest_slope() {
            Some(l) => match filling_volume_bounds(rec.volume, l) {
                Ok(b) => json!({ "lambda": l, "lower": p.format(b.lower, true), "upper": p.format(b.upper, false) }),
                Err(e) => json!({ "lambda": l, "rejected": e.to_string() }),
            },
            None => Value::Null,
        };
        r.record("volume", json!({ "manifold_id": rec.manifold_id, "volume": rec.volume, "cusps": rec.cusps, "filling": filling }));
    }
    let mut independent = 0;
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            let c = independence_certificate(&rs[i], &rs[j], eps)?;
            if c.verdict {
                independent += 1;
            }
            r.record("independence", independence_value(&c, p));
        }
    }
    rp.check(&mut r, "records", || {
        let again = parse_volume_records(&read(&a.file)?)?;
        if again == rs { Ok(()) } else { Err(Error::Construction("records changed".into())) }
    });
    r.line(format!("{} records, {independent} independent pairs at epsilon = {eps}", rs.len()));
    Ok(r)
}
