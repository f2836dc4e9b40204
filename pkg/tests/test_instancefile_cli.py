import subprocess
import sys

import numpy as np
import pytest

from maxcover import generators, instancefile
from maxcover.backends import (
    BucketHashSet,
    CountedBTree,
    LatticeRectangle,
    SortedArraySet,
    UnsortedArraySet,
)
from maxcover.cli import main
from maxcover.instancefile import InstanceFile, InstanceParseError, SetSpec


class TestFormatRoundTrip:
    def test_explicit_and_rectangle_sets(self):
        f = InstanceFile(
            k=2,
            sets=(SetSpec.explicit([3, 1, 4]),
                  SetSpec.rectangle([-1, 0], [2, 5])),
            bias=(0.1, 0.2, 0.0, 0.3),
            seed=99)
        again = instancefile.parse(f.emit())
        assert again == f

    def test_save_load(self, tmp_path):
        f = generators.generate_random(n=4, m_max=6, k=2, seed=5)
        path = tmp_path / "inst.txt"
        instancefile.save(f, path)
        assert instancefile.load(path) == f

    @pytest.mark.parametrize("text", [
        "",
        "not-a-header\nk 1\nset explicit 1",
        "maxcover-instance v2\nk 1\nset explicit 1",
        "maxcover-instance v1\nset explicit 1",          # missing k
        "maxcover-instance v1\nk 1",                     # no sets
        "maxcover-instance v1\nk 1\nset explicit 1 1",   # duplicate element
        "maxcover-instance v1\nk 1\nset rectangle 2 0 0 5",  # short coords
        "maxcover-instance v1\nk 1\nset mystery 1",
        "maxcover-instance v1\nk x\nset explicit 1",
        "maxcover-instance v1\nk 1\nbias 0.1 0.2\nset explicit 1",
        "maxcover-instance v1\nk 1\nwhat 3\nset explicit 1",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(InstanceParseError):
            instancefile.parse(text)


class TestBackendConstruction:
    @pytest.mark.parametrize("kind,cls", [
        ("sorted", SortedArraySet), ("unsorted", UnsortedArraySet),
        ("btree", CountedBTree), ("hash", BucketHashSet)])
    def test_explicit_kinds(self, kind, cls):
        backend = instancefile.build_backend(SetSpec.explicit([5, 2]), kind)
        assert isinstance(backend, cls)
        assert backend.size() == 2

    def test_rectangles_ignore_the_kind(self):
        spec = SetSpec.rectangle([0], [4])
        backend = instancefile.build_backend(spec, "sorted")
        assert isinstance(backend, LatticeRectangle)
        assert backend.size() == 5

    def test_rect_kind_rejected_for_explicit_sets(self):
        with pytest.raises(ValueError):
            instancefile.build_backend(SetSpec.explicit([1]), "rect")
        with pytest.raises(ValueError):
            instancefile.build_instance(
                InstanceFile(k=1, sets=(SetSpec.explicit([1]),)), "bogus")

    def test_materialize_rectangles(self):
        f = InstanceFile(k=1, sets=(SetSpec.rectangle([0, 0], [1, 1]),))
        (points,) = instancefile.materialize(f)
        assert len(points) == 4


class TestGenerators:
    def test_random_respects_shape(self):
        f = generators.generate_random(n=7, m_max=9, k=3, seed=0)
        assert len(f.sets) == 7 and f.k == 3
        for spec in f.sets:
            assert 1 <= len(spec.elements) <= 9
            assert all(1 <= x <= 18 for x in spec.elements)

    def test_random_is_seed_deterministic(self):
        a = generators.generate_random(n=5, m_max=8, k=2, seed=12)
        b = generators.generate_random(n=5, m_max=8, k=2, seed=12)
        assert a == b

    def test_disjoint(self):
        f = generators.generate_disjoint(n=3, m=4, k=2, seed=0)
        sets = instancefile.materialize(f)
        assert all(len(s) == 4 for s in sets)
        assert len(frozenset().union(*sets)) == 12

    def test_overlap_chain(self):
        f = generators.generate_overlap_chain(n=3, m=6, step=2, k=2, seed=0)
        sets = instancefile.materialize(f)
        assert len(sets[0] & sets[1]) == 4

    def test_twin_optima_structure(self):
        pair = generators.generate_twin(n=6, m=8, d=2, k=2, seed=4)
        left = instancefile.materialize(pair.left)
        right = instancefile.materialize(pair.right)
        assert all(s == {1, 2, 3, 4} for s in left)
        blocks = [right[i] for i in pair.block_indices]
        assert frozenset().union(*blocks) == set(range(1, 9))
        assert not blocks[0] & blocks[1]

    def test_twin_validation(self):
        with pytest.raises(ValueError):
            generators.generate_twin(n=4, m=10, d=3, k=3, seed=0)
        with pytest.raises(ValueError):
            generators.generate_twin(n=2, m=9, d=3, k=3, seed=0)


class TestCli:
    def _generate(self, tmp_path, *extra):
        path = tmp_path / "inst.txt"
        rc = main(["generate", "--kind", "random", "--n", "5", "--m-max", "8",
                   "--k", "2", "--seed", "3", "-o", str(path), *extra])
        assert rc == 0
        return path

    def test_generate_then_solve(self, tmp_path, capsys):
        path = self._generate(tmp_path)
        rc = main(["solve", str(path), "--xi", "0.4", "--gamma", "0.2",
                   "--seed", "0"])
        assert rc == 0
        out = capsys.readouterr().out
        fields = dict(line.split(" ", 1) for line in out.strip().splitlines())
        assert len(fields["indices"].split()) == 2
        assert float(fields["z"]) > 0
        assert int(fields["random_draws"]) > 0

    def test_solve_csv_report(self, tmp_path, capsys):
        path = self._generate(tmp_path)
        csv_path = tmp_path / "report.csv"
        for _ in range(2):
            assert main(["solve", str(path), "--xi", "0.4", "--gamma", "0.2",
                         "--seed", "1", "--csv", str(csv_path)]) == 0
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0].startswith("instance,backend,strategy")
        assert len(lines) == 3
        assert lines[1] == lines[2]  # same seed, same row

    def test_exact_subcommand(self, tmp_path, capsys):
        path = self._generate(tmp_path)
        assert main(["exact", str(path), "--mode", "optimum"]) == 0
        optimum = capsys.readouterr().out
        assert main(["exact", str(path), "--mode", "greedy"]) == 0
        greedy = capsys.readouterr().out
        assert main(["exact", str(path), "--mode", "min-cover"]) == 0
        cover = capsys.readouterr().out
        opt_cov = int(optimum.strip().splitlines()[1].split()[1])
        greedy_cov = int(greedy.strip().splitlines()[1].split()[1])
        assert greedy_cov <= opt_cov
        assert cover.startswith("min_cover ")

    def test_generate_twin_writes_both_files(self, tmp_path):
        prefix = tmp_path / "twin"
        rc = main(["generate", "--kind", "twin", "--n", "6", "--m", "8",
                   "--d", "2", "--k", "2", "--seed", "1", "-o", str(prefix)])
        assert rc == 0
        left = instancefile.load(str(prefix) + ".left")
        right = instancefile.load(str(prefix) + ".right")
        assert len(left.sets) == len(right.sets) == 6

    def test_verify_exit_code_zero_on_fast_suites(self, capsys):
        rc = main(["verify", "--suite", "counters", "--suite", "reduction"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "PASS counters" in out and "PASS reduction" in out
        assert "2/2 suites passed" in out

    def test_usage_errors_exit_2(self, tmp_path):
        path = self._generate(tmp_path)
        for argv in (["solve", str(path)],
                     ["solve", str(path), "--xi", "0.2", "--epsilon", "0.2"],
                     ["solve", str(tmp_path / "missing.txt"), "--xi", "0.2"],
                     ["generate", "--kind", "twin", "--n", "2", "--m", "9",
                      "--d", "3", "--k", "2"],
                     ["nonsense"]):
            with pytest.raises(SystemExit) as exc:
                main(argv)
            assert exc.value.code == 2

    def test_bench_counters_csv(self, tmp_path, capsys):
        out_path = tmp_path / "bench.csv"
        rc = main(["bench", "--which", "counters", "--csv", str(out_path)])
        assert rc == 0
        lines = out_path.read_text().strip().splitlines()
        assert lines[0] == "m,steps,random_draws,membership_queries,wall_seconds"
        draws = {line.split(",")[2] for line in lines[1:]}
        assert len(lines) == 4 and len(draws) == 1

    def test_console_script_entry_point(self, tmp_path):
        path = self._generate(tmp_path)
        proc = subprocess.run(
            [sys.executable, "-m", "maxcover.cli", "exact", str(path)],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "coverage" in proc.stdout
