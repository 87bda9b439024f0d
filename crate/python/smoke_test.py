"""Smoke test for the tailbite_py extension.

Loads an installed `tailbite_py` if present, otherwise the library built by
`cargo build -p tailbite-py [--release]`.
"""

import importlib.machinery
import importlib.util
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import tailbite_py

        return tailbite_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libtailbite_py.so", "libtailbite_py.dylib", "tailbite_py.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("tailbite_py", str(path))
                spec = importlib.util.spec_from_file_location("tailbite_py", path, loader=loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                sys.modules["tailbite_py"] = module
                return module
    sys.exit("tailbite_py not found: run `cargo build -p tailbite-py` first")


def main():
    tb = load()

    kv4 = tb.LinearCode(["1100", "0111"])
    assert (kv4.n, kv4.k, kv4.q) == (4, 2, 2)
    assert sorted(kv4.codewords()) == ["0000", "0111", "1011", "1100"]
    assert tb.LinearCode.parse(kv4.emit()) == kv4

    pair = kv4.characteristic_pair()
    assert pair.spans() == ["(0,1]", "(1,3]", "(2,0]", "(3,2]"]
    t = tb.kv_trellis(pair, [0, 1])
    assert t.scp() == pair.kv_scp([0, 1])
    assert t.is_one_to_one() and t.is_biproper() and t.is_non_mergeable()
    assert t.is_minimal(kv4) is True

    small = tb.LinearCode(["101", "110"])
    b = tb.bcjr_trellis(small, "(0,2],(1,0]")
    assert not b.is_one_to_one()
    assert b.scp() == [1, 1, 1]

    nonchi = tb.LinearCode(["01110", "10010", "01101"])
    spans = "(1,3],(3,0],(2,1]"
    p = tb.product_trellis(nonchi, spans)
    q = tb.bcjr_trellis(nonchi, spans)
    assert p.isomorphic(q) is True
    assert q.label_code() == nonchi
    merge = tb.quotient_merge(nonchi, spans)
    assert merge["coefficient_map_ok"] and merge["isomorphic"]
    dual = tb.bcjr_dual(nonchi, spans)
    assert dual.scp() == q.scp() and dual.components() == 2
    assert tb.edge_space_dual(nonchi, spans)["contains_bcjr_dual"]

    report = tb.kv_duality_check(kv4, pair, [0, 1])
    assert report["weak"] and report["weak_isomorphic"]

    search = tb.conjecture_search(4)
    assert search["passes"] and search["codes"] > 0

    try:
        tb.LinearCode(["11", "11"])
    except ValueError:
        pass
    else:
        raise AssertionError("rank-deficient generator accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
