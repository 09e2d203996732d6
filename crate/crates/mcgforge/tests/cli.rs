use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use mcgforge::cli::{report_schema_version, run, Outcome, SCHEMA_VERSION};
use serde_json::Value;

mod common;
use common::CLI_GOLDEN as GOLDEN;

fn mcg(args: &str) -> Outcome {
    mcg_env(args, None)
}

fn mcg_env(args: &str, precision: Option<&str>) -> Outcome {
    let argv = std::iter::once("mcgforge".to_string()).chain(args.split_whitespace().map(String::from));
    run(argv, precision)
}

fn records(out: &str) -> Vec<Value> {
    out.lines().filter(|l| l.starts_with('{')).map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn of_kind<'a>(rs: &'a [Value], kind: &str) -> Vec<&'a Value> {
    rs.iter().filter(|r| r["record"] == kind).collect()
}


fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn canonical(args: &str) -> String {
    let out = mcg(&format!("--canonical {args}"));
    assert_eq!(out.code, 0, "{args}: {}", out.stderr);
    out.stdout
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in GOLDEN {
        let a = canonical(args);
        let b = canonical(args);
        assert_eq!(a, b, "{name} is not deterministic");
        let path = golden_dir().join(format!("{name}.jsonl"));
        if update {
            std::fs::write(&path, &a).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(a, want, "{name} differs from its golden report");
    }
}

/// Top-level keys of each record kind over all golden reports.
fn schema_fingerprint() -> BTreeMap<String, BTreeSet<String>> {
    let mut fp: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (_, args) in GOLDEN {
        for r in records(&canonical(args)) {
            let kind = r["record"].as_str().unwrap().to_string();
            let keys = r.as_object().unwrap().keys().cloned();
            fp.entry(kind).or_default().extend(keys);
        }
    }
    fp
}

#[test]
fn schema_changes_bump_the_version() {
    assert_eq!(report_schema_version(), "1.0.0");
    let path = golden_dir().join("schema.json");
    let current = serde_json::json!({ "version": SCHEMA_VERSION, "records": schema_fingerprint() });
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&current).unwrap() + "\n").unwrap();
        return;
    }
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    if stored["version"] == current["version"] {
        assert_eq!(stored["records"], current["records"], "report schema changed: bump SCHEMA_VERSION");
    } else {
        assert_ne!(stored["records"], current["records"], "version bumped without a schema change");
    }
}

#[test]
fn every_record_carries_the_schema_version() {
    for (_, args) in GOLDEN {
        let out = canonical(args);
        let rs = records(&out);
        assert!(rs.len() >= 2);
        assert_eq!(rs[0]["record"], "header");
        assert_eq!(rs.last().unwrap()["record"], "summary");
        assert!(rs.iter().all(|r| r["schema"] == SCHEMA_VERSION));
        assert!(out.lines().last().unwrap().starts_with("# "), "no human summary for {args}");
        assert!(rs[0].get("environment").is_none());
    }
    let plain = mcg("certify independence --a 1.0 --b 1.5");
    assert!(records(&plain.stdout)[0].get("environment").is_some());
}

#[test]
fn spec_examples() {
    let rs = records(&canonical("coset abelian --g 3 --k 3 --exps 5,5,5"));
    let ob = of_kind(&rs, "open_book")[0];
    assert_eq!(ob["page"]["genus"], 6);
    assert_eq!(ob["page"]["boundary"], 1);
    assert_eq!(ob["monodromy_length"].as_u64().unwrap(), ob["base_word_length"].as_u64().unwrap() + 6);
    let coset = of_kind(&rs, "coset")[0];
    assert_eq!(coset["rank"], 3);
    assert_eq!(of_kind(&rs, "stallings_curve").len(), 3);
    assert!(of_kind(&rs, "stallings_curve").iter().all(|s| s["framing"] == 0));
    let certs = of_kind(&rs, "certificate");
    assert!(certs.iter().all(|c| c["present"] == true));
    assert_eq!(certs[0]["certificate"]["kind"], "PennerPA");
    assert_eq!(certs[1]["certificate"]["kind"], "LongMortonOK");

    let rs = records(&canonical("link family --l 1 --m 4 --k 2"));
    let fam = of_kind(&rs, "family")[0];
    assert_eq!(fam["member"]["genus"], 2 + 4 + 1 + 2 * 2);
    assert_eq!(fam["member"]["surgery"]["ambient"], "4_1(-5)");
    assert_eq!(fam["ambient_q_hyperbolic"], true);
    assert_eq!(fam["member"]["surgery"]["q_hyperbolic"], true);

    let rs = records(&canonical("certify independence --a 1.0 --b 1.5"));
    let ind = of_kind(&rs, "independence")[0];
    assert_eq!(ind["verdict"], true);
    assert_eq!(ind["epsilon"], 0.9);

    let rs = records(&canonical("coset free --g 4"));
    assert_eq!(of_kind(&rs, "coset")[0]["intersection"], 4);
    assert_eq!(of_kind(&rs, "certificate")[0]["certificate"]["kind"], "FreeRank2");
}

#[test]
fn exit_codes() {
    assert_eq!(mcg("frobnicate").code, 2);
    assert_eq!(mcg("-h").code, 2);
    assert_eq!(mcg("link family --l 1").code, 2);
    assert_eq!(mcg("coset abelian --g 3 --k 3 --exps 1,0,1").code, 2);
    let help = mcg("--help");
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("certify"));
    assert_eq!(mcg("certify penner --help").code, 0);

    let bad = mcg("certify filling --vol 2 --lambda 6.28");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("2π"), "{}", bad.stderr);

    let none = mcg("--require-certificate link family --l 1 --m 1 --k 1");
    assert_eq!(none.code, 1);
    assert!(none.stderr.contains("qhyp 4_1(-2)"));
    assert_eq!(mcg("link family --l 1 --m 1 --k 1").code, 0);
    assert_eq!(mcg("--require-certificate certify independence --a 1 --b 1").code, 1);
    assert_eq!(mcg("--require-certificate certify independence --a 1 --b 1.2").code, 0);
    assert_eq!(mcg("--require-certificate certify qhyp --goal 4_1(-2)").code, 1);
    assert_eq!(mcg("certify qhyp --goal 4_1(").code, 2);
}

#[test]
fn replay_flag_rechecks_certificates() {
    for args in [
        "coset abelian --g 2 --k 2",
        "certify penner --chain-genus 2",
        "certify growth",
        "distance --a 1/0 --b 3/1",
        "certify qhyp --goal double(link_complement(4_1(7),K))",
        "link family --l 2 --m 3 --k 1",
    ] {
        let out = mcg(&format!("--replay --require-certificate {args}"));
        assert_eq!(out.code, 0, "{args}: {}", out.stderr);
        let rs = records(&out.stdout);
        let rep = of_kind(&rs, "replay");
        assert!(!rep.is_empty(), "{args}");
        assert!(rep.iter().all(|r| r["ok"] == true));
    }
}

#[test]
fn precision_and_config() {
    let p17 = mcg_env("certify filling --vol 2 --lambda 12.566370614359172", Some("17"));
    assert_eq!(p17.code, 0);
    let rs = records(&p17.stdout);
    assert_eq!(of_kind(&rs, "filling")[0]["lower"], "1.2990381056766564");
    assert_eq!(rs[0]["config"]["precision"], 17);
    assert_eq!(mcg_env("certify filling --vol 2 --lambda 13", Some("9")).code, 2);
    assert_eq!(mcg_env("certify filling --vol 2 --lambda 13", Some("x")).code, 2);

    let dir = tempfile::tempdir().unwrap();
    let toml = dir.path().join("cfg.toml");
    std::fs::write(&toml, "epsilon = 0.4\nvolume_constant = 2.5\n").unwrap();
    let out = mcg(&format!("--config {} certify independence --a 1.0 --b 1.5", toml.display()));
    assert_eq!(out.code, 0);
    let rs = records(&out.stdout);
    assert_eq!(of_kind(&rs, "independence")[0]["verdict"], false);
    assert_eq!(rs[0]["config"]["epsilon"], 0.4);

    let out = mcg(&format!("--config {} coset abelian --g 2 --k 1 --norm-upper 10", toml.display()));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rs = records(&out.stdout);
    assert_eq!(of_kind(&rs, "volume_bound")[0]["bound"], 25.0);
    let no_b = mcg("coset abelian --g 2 --k 1 --norm-upper 10");
    assert_eq!(no_b.code, 2);
    assert!(no_b.stderr.contains("not effective"));

    let json = dir.path().join("cfg.json");
    std::fs::write(&json, r#"{"precision": 16, "iterations": 9}"#).unwrap();
    let out = mcg(&format!("--config {} certify growth", json.display()));
    let rs = records(&out.stdout);
    assert_eq!(rs[0]["config"]["precision"], 16);
    assert_eq!(of_kind(&rs, "growth")[0]["values"].as_array().unwrap().len(), 9);
    std::fs::write(&json, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(mcg(&format!("--config {} certify growth", json.display())).code, 2);
}

#[test]
fn qhyp_fact_store_file() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("facts.json");
    let shadow = dir.path().join("shadow.jsonl");
    std::fs::write(&shadow, "{\"name\":\"FSL_2\",\"cusps\":2}\n").unwrap();
    let run1 = mcg(&format!("certify qhyp --goal 4_1(-5) --facts {}", store.display()));
    assert_eq!(run1.code, 0);
    let run2 = mcg(&format!(
        "--replay certify qhyp --goal drilled(4_1(-5),1) --facts {} --shadow {}",
        store.display(),
        shadow.display()
    ));
    assert_eq!(run2.code, 0, "{}", run2.stderr);
    let rs = records(&run2.stdout);
    assert_eq!(of_kind(&rs, "goal")[0]["new_facts"], 1);
    let run3 = mcg(&format!("certify qhyp --goal double(FSL_2) --facts {}", store.display()));
    let rs = records(&run3.stdout);
    assert_eq!(of_kind(&rs, "certificate")[0]["present"], true);
    let saved = mcgforge::geometry::FactStore::from_json(&std::fs::read_to_string(&store).unwrap()).unwrap();
    assert_eq!(saved.facts.len(), 5);
    std::fs::write(&store, "{not json").unwrap();
    assert_eq!(mcg(&format!("certify qhyp --goal 4_1 --facts {}", store.display())).code, 2);
}

#[test]
fn ingest_and_records() {
    let out = canonical("ingest volumes --file tests/data/volumes.jsonl");
    let rs = records(&out);
    assert_eq!(of_kind(&rs, "volume").len(), 4);
    assert_eq!(of_kind(&rs, "independence").len(), 6);
    let f = mcg("certify filling --records tests/data/volumes.jsonl --id m004");
    assert_eq!(f.code, 0, "{}", f.stderr);
    let i = mcg("certify independence --records tests/data/volumes.jsonl --ids m004(-5),m004(-6)");
    assert_eq!(of_kind(&records(&i.stdout), "independence")[0]["verdict"], true);
    assert_eq!(mcg("certify filling --records tests/data/volumes.jsonl --id m004(-5)").code, 2);
    assert_eq!(mcg("ingest volumes --file tests/data/missing.jsonl").code, 2);
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_mcgforge");
    let go = || {
        std::process::Command::new(bin)
            .args(["--canonical", "link", "family", "--l", "1", "--m", "4", "--k", "2"])
            .env_remove("MCGFORGE_PRECISION")
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = std::process::Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
