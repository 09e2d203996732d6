"""Smoke test for the mcgforge_py extension.

Run after `maturin develop -m crates/mcgforge-py/Cargo.toml`, or after
`cargo build -p mcgforge-py`: the script falls back to the shared library
in target/.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import mcgforge_py

        return mcgforge_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libmcgforge_py.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "mcgforge_py.so")
            sys.path.insert(0, str(tmp))
            import mcgforge_py

            return mcgforge_py
    sys.exit("mcgforge_py not built; run `cargo build -p mcgforge-py` first")


def main():
    m = load()

    t = m.Surface(1, 1)
    a, b = t.slope(1, 0), t.slope(0, 1)
    assert a.intersection(b) == 1
    assert t.slope(2, 1).intersection(t.slope(1, 3)) == 5
    assert a.distance(b) == (1, 1)

    w = m.TwistWord(t, {"a": a, "b": b}, "[a^1, b^-1]")
    assert len(w) == 2
    assert w.inverse().act(w.act(b)) == b
    g = w.growth(b, iterations=10)
    assert g["verdict"] == "HeuristicPA", g
    assert abs(g["estimate"] - (3 + 5 ** 0.5) / 2) < 1e-6
    cert = w.penner_certificate([a], [b])
    assert cert is not None
    cert.replay()
    again = m.Certificate.from_json(cert.to_json())
    again.replay()

    ob = m.OpenBook.penner_base(3).stabilize(3)
    assert ob.page() == (6, 1)
    assert ob.binding_components() == 1
    coset = ob.abelian_coset([5, 5, 5])
    assert coset["rank"] == 3
    assert all(s["framing"] == 0 for s in coset["stallings"])
    assert coset["long_morton_certificate"] is not None

    fc = m.OpenBook.penner_base(4).stabilize(4).free_coset()
    assert fc["intersection"] == 4

    rec = m.family_record(1, 4, 2)
    assert rec["genus"] == 11
    assert rec["surgery"]["ambient"] == "4_1(-5)"

    lo, hi = m.filling_bounds(2.0, 4 * 3.141592653589793)
    assert lo == "1.29903810567665" and float(hi) == 2.0, (lo, hi)
    try:
        m.filling_bounds(2.0, 6.0)
    except RuntimeError as e:
        assert "2π" in str(e)
    else:
        raise AssertionError("λ below 2π accepted")
    assert m.independence(1.0, 1.5)["verdict"] is True
    assert m.independence(1.0, 1.0)["verdict"] is False

    store = m.FactStore()
    d = store.derive("link_complement(4_1(-5),L')")
    assert d is not None and [f["rule"] for f in d["chain"]][-1] == 6
    assert store.derive("4_1(-2)") is None
    restored = m.FactStore.from_json(store.to_json())
    assert len(restored) == len(store)

    code, out, _ = m.run_cli(["--canonical", "certify", "independence", "--a", "1.0", "--b", "1.5"])
    assert code == 0
    header = json.loads(out.splitlines()[0])
    assert header["schema"] == m.SCHEMA_VERSION
    code, _, err = m.run_cli(["certify", "filling", "--vol", "2", "--lambda", "6"])
    assert code == 2 and "2π" in err

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
