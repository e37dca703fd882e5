import json

import pytest

from latticeforge.cli import (
    main,
    parse_cover_data,
    parse_polytope_data,
    parse_strict_json,
)
from latticeforge.errors import PolytopeFileError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestUnimodularTest:
    def test_stretched_simplex_file(self, capsys, tmp_path):
        path = write(tmp_path, "a1.json", {
            "dim": 3,
            "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 2]],
        })
        code, report, err = run(capsys, "unimodular-test", path)
        assert code == 1
        assert report["result"] == {
            "lattice_index": 2,
            "unimodular": False,
            "hnf_diagonal": [1, 1, 2],
        }
        assert "not unimodular" in err

    def test_standard_simplex_example(self, capsys):
        code, report, _ = run(capsys, "unimodular-test", "--example", "std-simplex-3")
        assert code == 0
        assert report["result"]["unimodular"] is True

    def test_collinear_points_rejected(self, capsys, tmp_path):
        path = write(tmp_path, "line.json", {"dim": 2, "vertices": [[0, 0], [1, 0], [2, 0]]})
        code, report, err = run(capsys, "unimodular-test", path)
        assert code == 2
        assert report is None
        assert "error" in err

    def test_cover_file_all_cells(self, capsys, tmp_path):
        path = write(tmp_path, "cover.json", {
            "dim": 2,
            "cells": [
                [[0, 0], [1, 0], [0, 1]],
                [[0, 0], [2, 0], [0, 2]],
            ],
        })
        code, report, err = run(capsys, "unimodular-test", path)
        assert code == 1
        cells = report["result"]["cells"]
        assert [c["lattice_index"] for c in cells] == [1, 4]
        assert report["result"]["all_unimodular"] is False

    def test_cover_file_single_cell(self, capsys, tmp_path):
        path = write(tmp_path, "cover.json", {
            "dim": 2,
            "cells": [
                [[0, 0], [1, 0], [0, 1]],
                [[0, 0], [2, 0], [0, 2]],
            ],
        })
        code, report, _ = run(capsys, "unimodular-test", path, "--cell", "0")
        assert code == 0
        assert report["result"]["cells"] == [
            {"cell": 0, "lattice_index": 1, "unimodular": True, "hnf_diagonal": [1, 1]}
        ]
        code, _, err = run(capsys, "unimodular-test", path, "--cell", "9")
        assert code == 2
        assert "out of range" in err

    def test_cell_flag_needs_cover_file(self, capsys):
        code, _, err = run(capsys, "unimodular-test", "--example", "a1", "--cell", "0")
        assert code == 2
        assert "cover" in err


class TestIdpCheck:
    def test_reeve_simplex_single_h(self, capsys):
        code, report, _ = run(capsys, "idp-check", "--example", "a2", "--h", "2")
        assert code == 1
        rep = report["result"]["reports"][0]
        assert rep["holds"] is False
        assert rep["witnesses"] == [[1, 1, 1]]

    def test_standard_simplex_scan(self, capsys):
        code, report, _ = run(capsys, "idp-check", "--example", "std-simplex-3", "--h-max", "4")
        assert code == 0
        assert all(r["holds"] for r in report["result"]["reports"])
        assert [r["h"] for r in report["result"]["reports"]] == [1, 2, 3, 4]

    def test_h_zero_is_usage_error(self, capsys):
        code, _, err = run(capsys, "idp-check", "--example", "a2", "--h", "0")
        assert code == 2
        assert "positive" in err

    def test_both_h_flags_rejected(self, capsys):
        code, _, _ = run(capsys, "idp-check", "--example", "a2", "--h", "1", "--h-max", "2")
        assert code == 2

    def test_resource_cap_exit(self, capsys, tmp_path):
        path = write(tmp_path, "big.json", {"dim": 3, "vertices": [[0, 0, 0], [300, 300, 300]]})
        code, _, err = run(capsys, "idp-check", path, "--h", "2")
        assert code == 3
        assert "resource" in err.lower()


class TestDecompose:
    def test_square_point(self, capsys):
        code, report, err = run(capsys, "decompose", "--example", "cube-2", "--point", "1,1", "--h", "2")
        assert code == 0
        result = report["result"]
        assert result["mode"] == "certified-cover"
        parts = [tuple(p) for p in result["decomposition"]["parts"]]
        assert len(parts) == 2
        assert tuple(a + b for a, b in zip(*parts)) == (1, 1)

    def test_vertex_multiple(self, capsys):
        code, report, _ = run(capsys, "decompose", "--example", "std-simplex-2", "--point", "0,0", "--h", "4")
        assert code == 0
        assert report["result"]["decomposition"]["parts"] == [[0, 0]] * 4

    def test_reeve_simplex_no_decomposition(self, capsys):
        code, report, err = run(capsys, "decompose", "--example", "a2", "--point", "1,1,1", "--h", "2")
        assert code == 1
        result = report["result"]
        assert result["mode"] == "direct-search"
        assert result["decomposition_exists"] is False
        assert "no decomposition" in err

    def test_point_outside_is_input_error(self, capsys):
        code, _, err = run(capsys, "decompose", "--example", "cube-2", "--point", "9,9", "--h", "2")
        assert code == 2
        assert "not in the 2-fold dilate" in err

    def test_with_explicit_cover(self, capsys, tmp_path):
        cover = write(tmp_path, "cover.json", {
            "dim": 2,
            "cells": [
                [[0, 0], [1, 0], [0, 1]],
                [[1, 0], [0, 1], [1, 1]],
            ],
        })
        code, report, _ = run(
            capsys, "decompose", "--example", "cube-2", "--point", "1,1", "--h", "2", "--cover", cover
        )
        assert code == 0
        assert report["result"]["cover"]["certification"] == "certified"

    def test_with_bad_cover_falls_back(self, capsys, tmp_path):
        cover = write(tmp_path, "half.json", {
            "dim": 2,
            "cells": [[[0, 0], [1, 0], [0, 1]]],
        })
        code, report, _ = run(
            capsys, "decompose", "--example", "cube-2", "--point", "1,1", "--h", "2", "--cover", cover
        )
        assert code == 1
        result = report["result"]
        assert result["mode"] == "direct-search"
        assert result["decomposition_exists"] is True


class TestTriangulate:
    def test_cube_certified(self, capsys):
        code, report, err = run(capsys, "triangulate", "--example", "cube-3")
        assert code == 0
        result = report["result"]
        assert result["certificate"] == "certified"
        assert len(result["cover"]["cells"]) == 6
        assert "6 unimodular cells" in err

    def test_reeve_simplex_impossible(self, capsys):
        code, report, err = run(capsys, "triangulate", "--example", "a2")
        assert code == 1
        assert report["result"]["certificate"] == "impossible"
        assert "unique" in err

    def test_verify_cover_mode(self, capsys, tmp_path):
        cover = write(tmp_path, "cover.json", {
            "dim": 2,
            "cells": [
                [[0, 0], [1, 0], [0, 1]],
                [[1, 0], [0, 1], [1, 1]],
            ],
        })
        code, report, _ = run(capsys, "triangulate", "--example", "cube-2", "--verify-cover", cover)
        assert code == 0
        assert report["result"]["certification"] == "certified"

    def test_verify_cover_deficit(self, capsys, tmp_path):
        cover = write(tmp_path, "half.json", {"dim": 2, "cells": [[[0, 0], [1, 0], [0, 1]]]})
        code, report, _ = run(capsys, "triangulate", "--example", "cube-2", "--verify-cover", cover)
        assert code == 1
        assert report["result"]["certification"] == "uncertified"
        assert any("volume" in p for p in report["result"]["problems"])

    def test_verify_general_cover(self, capsys, tmp_path):
        # overlapping cells are fine for a general cover: best status is
        # vertices-only (coverage itself is not exactly checked)
        cover = write(tmp_path, "gen.json", {
            "dim": 2,
            "kind": "general-cover",
            "cells": [
                [[0, 0], [1, 0], [0, 1]],
                [[0, 0], [1, 0], [1, 1]],
                [[0, 0], [0, 1], [1, 1]],
                [[1, 0], [0, 1], [1, 1]],
            ],
        })
        code, report, _ = run(capsys, "triangulate", "--example", "cube-2", "--verify-cover", cover)
        assert code == 0
        assert report["result"]["certification"] == "vertices-only"


class TestFindEll:
    def test_standard_simplex(self, capsys):
        code, report, _ = run(capsys, "find-ell", "--example", "std-simplex-3", "--ell-max", "2", "--h-max", "2")
        assert code == 0
        assert report["result"]["ell"] == 1

    def test_unit_cube(self, capsys):
        code, report, _ = run(capsys, "find-ell", "--example", "cube-3", "--ell-max", "1", "--h-max", "2")
        assert code == 0
        assert report["result"]["ell"] == 1
        assert report["result"]["per_ell"][0]["cells"] == 6

    def test_reeve_simplex_rows(self, capsys):
        code, report, _ = run(
            capsys, "find-ell", "--example", "a2", "--ell-max", "2", "--h-max", "2", "--attempts", "5"
        )
        rows = report["result"]["per_ell"]
        assert rows[0]["certificate"] == "impossible"
        assert rows[0]["idp"][1]["holds"] is False
        assert [[1, 1, 1]] == rows[0]["idp"][1]["witnesses"]
        if report["result"]["ell"] is None:
            assert code == 1


class TestInputHandling:
    def test_missing_input(self, capsys):
        code, _, err = run(capsys, "idp-check", "--h", "1")
        assert code == 2
        assert "no input" in err

    def test_file_and_example_conflict(self, capsys, tmp_path):
        path = write(tmp_path, "p.json", {"dim": 1, "vertices": [[0], [1]]})
        code, _, _ = run(capsys, "idp-check", path, "--example", "a1", "--h", "1")
        assert code == 2

    def test_unknown_example(self, capsys):
        code, _, err = run(capsys, "idp-check", "--example", "nope", "--h", "1")
        assert code == 2
        assert "unknown example" in err

    def test_float_rejected(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        path.write_text('{"dim": 2, "vertices": [[0, 0], [1.5, 0], [0, 1]]}')
        code, _, err = run(capsys, "idp-check", str(path), "--h", "1")
        assert code == 2
        assert "floating point" in err

    def test_bool_rejected(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        path.write_text('{"dim": 2, "vertices": [[0, 0], [true, 0], [0, 1]]}')
        code, _, err = run(capsys, "idp-check", str(path), "--h", "1")
        assert code == 2
        assert "integer" in err

    def test_bad_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "unimodular-test", str(path))
        assert code == 2
        assert "invalid JSON" in err

    def test_unknown_field_rejected(self, capsys, tmp_path):
        path = write(tmp_path, "extra.json", {"dim": 1, "vertices": [[0]], "vertexes": []})
        code, _, err = run(capsys, "unimodular-test", str(path))
        assert code == 2
        assert "unknown" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "unimodular-test", "/nonexistent/path.json")
        assert code == 2


class TestRoundTripAndDeterminism:
    def test_polytope_file_round_trip(self):
        data = {"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]], "name": "x"}
        text = json.dumps(data)
        parsed = parse_polytope_data(parse_strict_json(text))
        assert parsed == data
        # serialize -> parse is the identity on the parsed structure
        assert parse_polytope_data(parse_strict_json(json.dumps(parsed))) == parsed

    def test_cover_file_round_trip(self):
        data = {"dim": 2, "cells": [[[0, 0], [1, 0], [0, 1]]], "kind": "triangulation"}
        parsed = parse_cover_data(parse_strict_json(json.dumps(data)))
        assert parsed == data

    def test_big_integers_survive(self):
        big = 10**40
        data = {"dim": 1, "vertices": [[0], [big]]}
        parsed = parse_polytope_data(parse_strict_json(json.dumps(data)))
        assert parsed["vertices"][1][0] == big

    def test_reports_are_deterministic(self, capsys):
        runs = []
        for _ in range(2):
            code, report, _ = run(
                capsys, "find-ell", "--example", "a2", "--ell-max", "2", "--h-max", "2",
                "--attempts", "4", "--seed", "9",
            )
            report.pop("wall_time_s")
            runs.append((code, json.dumps(report, sort_keys=True)))
        assert runs[0] == runs[1]

    def test_schema_fields_present(self, capsys):
        _, report, _ = run(capsys, "unimodular-test", "--example", "a1")
        assert report["schema"] == "latticeforge/1"
        assert report["command"] == "unimodular-test"
        assert report["input_digest"].startswith("sha256:")
        assert "version" in report and "wall_time_s" in report


class TestStrictParsing:
    def test_reject_nan(self):
        with pytest.raises(PolytopeFileError):
            parse_strict_json('{"dim": NaN}')

    def test_vertices_shape_checked(self):
        with pytest.raises(PolytopeFileError):
            parse_polytope_data({"dim": 2, "vertices": [[0, 0, 0]]})
        with pytest.raises(PolytopeFileError):
            parse_polytope_data({"dim": 2, "vertices": []})
        with pytest.raises(PolytopeFileError):
            parse_polytope_data({"dim": 0, "vertices": [[]]})

    def test_cover_kind_checked(self):
        with pytest.raises(PolytopeFileError):
            parse_cover_data({"dim": 2, "cells": [[[0, 0]]], "kind": "mystery"})
