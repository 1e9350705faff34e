import pytest

from trinomial_lnd.config import EngineConfig
from trinomial_lnd.engine.workspace import CONTEXT_CACHE_SIZE, Workspace, build_context

from .conftest import BINARY_SPEC, EULER, QUADRIC_SPEC, SWAP


@pytest.fixture
def workspace():
    ws = Workspace(EngineConfig())
    ws.initialize()
    yield ws
    ws.close()


def test_info(workspace):
    result = workspace.info(text=QUADRIC_SPEC)
    assert result["result"] == "success"
    info = result["info"]
    assert info["free_rank"] == 3
    assert info["torsion"] == []
    assert info["coordinates"] == "explicit"
    assert info["g_degree"] == {"coordinates": [0, 0, 2], "torsion": []}
    assert info["generator_degrees"]["T(1,2)"]["coordinates"] == [0, -1, 1]
    assert len(info["basic_sets"]) == 8
    assert info["positive_functional"] == {"weights": [4, 4, 4, 4, 4], "block_value": 8}


def test_load_is_cached_and_applies_settings(workspace):
    text = BINARY_SPEC + "nilpotency_cap: 7\n"
    ctx = workspace.load(text=text)
    assert workspace.load(text=text) is ctx
    assert ctx.config.nilpotency_cap == 7
    assert workspace.load(text=BINARY_SPEC).config.nilpotency_cap == 50


def test_load_from_path(workspace, quadric_spec_file):
    ctx = workspace.load(str(quadric_spec_file))
    assert ctx.coordinates.is_explicit


def test_errors_become_result_dicts(workspace, tmp_path):
    missing = workspace.info(str(tmp_path / "absent.spec"))
    assert missing["result"] == "error"
    assert missing["kind"] == "OSError"
    broken = workspace.info(text="l0: 1\nl1: 1\n")
    assert broken["kind"] == "SemanticError"
    assert workspace.info()["kind"] == "SemanticError"


def test_elementary(workspace):
    assert workspace.elementary(text=QUADRIC_SPEC)["count"] == 12
    listing = workspace.elementary(text=QUADRIC_SPEC, listing=True)["classes"]
    assert len(listing) == 12
    assert sum(1 for cls in listing if cls["type"] == "I") == 4
    assert all(image.startswith("beta") for cls in listing for image in cls["images"].values())


def test_is_root(workspace):
    root = workspace.is_root("-1 -1 0", text=QUADRIC_SPEC)["root"]
    assert root["is_root"]
    assert root["basic_sets"] == [{"set": "E(T(0,1),T(1,1))", "witness": [0, 0, 0, 0, 0]}]
    assert not workspace.is_root(["0", "0", "1"], text=QUADRIC_SPEC)["root"]["is_root"]
    assert workspace.is_root([1, 1, 1], text=QUADRIC_SPEC)["root"]["type_one"]


@pytest.mark.parametrize("degree, kind", [("a b c", "SpecSyntaxError"), ("1 2", "LengthMismatch")])
def test_bad_degrees(workspace, degree, kind):
    result = workspace.is_root(degree, text=QUADRIC_SPEC)
    assert result["result"] == "error"
    assert result["kind"] == kind


def test_witness(workspace):
    result = workspace.witness("1 1 1", text=QUADRIC_SPEC)
    assert len(result["derivations"]) == 3
    for entry in result["derivations"]:
        assert entry["well_defined"]
        assert entry["nilpotency"]["nilpotent"]
        assert entry["elementary"] is not None
        assert entry["degree"] == {"coordinates": [1, 1, 1], "torsion": []}


def test_roots(workspace):
    result = workspace.roots([(-1, 1)] * 3, text=QUADRIC_SPEC)
    assert result["count"] == 12
    table = workspace.roots([(-1, 1)] * 3, text=QUADRIC_SPEC, output_format="csv")["csv"]
    lines = table.splitlines()
    assert lines[0] == "x1,x2,x3,count,type1"
    assert "-1,-1,0,1,0" in lines
    assert "1,1,1,3,1" in lines
    assert len(lines) == 13
    assert workspace.roots([(0, 0)] * 3, text=QUADRIC_SPEC, output_format="xml")["kind"] == "SemanticError"


def test_verify(workspace):
    swap = workspace.verify(SWAP, text=QUADRIC_SPEC)
    assert swap["well_defined"] and swap["homogeneous"]
    assert swap["nilpotency"] == {"nilpotent": True, "index": 2}
    assert swap["elementary"]["type"] == "II"
    assert swap["images"] == {"T(0,1)": "T(1,1)", "T(1,2)": "-T(0,2)"}

    euler = workspace.verify(EULER, text=QUADRIC_SPEC, nilpotency_cap=5)
    assert euler["nilpotency"] == {"nilpotent": None, "unknown_at_cap": 5}
    assert euler["elementary"] is None
    assert "not_elementary" in euler


def test_verify_rejects_bad_derivations(workspace):
    assert workspace.verify("T(0,1) => 1", text=QUADRIC_SPEC)["kind"] == "SpecSyntaxError"
    not_well_defined = workspace.verify("T(0,1) -> 1\n", text=QUADRIC_SPEC)
    assert not not_well_defined["well_defined"]


def test_oracle(workspace):
    result = workspace.oracle(text=BINARY_SPEC, cap=6, samples=5, nilpotency_cap=12)
    report = result["report"]
    assert report["ok"]
    assert len(report["degrees"]) == 5
    assert report["samples"] == 5
    window = workspace.oracle(text=BINARY_SPEC, window=(-1, 0), cap=6, samples=2, nilpotency_cap=12)["report"]
    assert len(window["degrees"]) == 2


def test_context_cache_is_bounded(workspace):
    build_context.cache_clear()
    for k in range(CONTEXT_CACHE_SIZE + 5):
        workspace.load(text=f"{BINARY_SPEC}# copy {k}\n")
    assert build_context.cache_info().currsize == CONTEXT_CACHE_SIZE
    workspace.close()
    assert build_context.cache_info().currsize == 0


@pytest.mark.parametrize("cap", [0, -1])
def test_nilpotency_cap_must_be_positive(workspace, cap):
    assert workspace.verify(SWAP, text=QUADRIC_SPEC, nilpotency_cap=cap)["kind"] == "ConfigError"
    assert workspace.oracle(text=BINARY_SPEC, nilpotency_cap=cap)["kind"] == "ConfigError"


def test_spec_settings_are_validated(workspace):
    assert workspace.info(text=BINARY_SPEC + "nilpotency_cap: 0\n")["kind"] == "ConfigError"


def test_undecodable_spec_file(workspace, tmp_path):
    path = tmp_path / "latin1.spec"
    path.write_bytes(b"l0: 1\nl1: 1\nl2: 2 # \xe9\n")
    result = workspace.info(str(path))
    assert result["result"] == "error"
    assert result["kind"] == "UnicodeDecodeError"
