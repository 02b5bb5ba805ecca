from fractions import Fraction

from torusmaps.verification import Report, SUITES, disk_side_count, marked_counts, suite_counting


def test_report_lines_and_counterexamples():
    rep = Report("demo")
    rep.add("good", True, "1 map", "ignored")
    rep.add("bad", False, "2 maps", "darts: 2\nalpha: 0-1\n")
    assert not rep.passed
    assert rep.lines() == ["PASS demo: good (1 map)", "FAIL demo: bad (2 maps)",
                           "    darts: 2", "    alpha: 0-1"]
    data = rep.to_dict()
    assert data["cases"][0]["counterexample"] is None
    assert data["cases"][1]["counterexample"].startswith("darts")


def test_suite_names():
    assert {"roundtrip", "uniqueness", "gamma-linearity", "epsilon", "parity", "counting",
            "series-crosscheck"} <= set(SUITES)


def test_counting_suite_reports_each_size():
    rep = suite_counting(("T",), 2)
    assert rep.passed and [c.name for c in rep.cases] == ["T n=1", "T n=2"]


def test_disk_side_counts():
    assert [disk_side_count(3, k) for k in range(3)] == [1, 3, 15]


def test_marked_counts_weight_by_automorphisms():
    exposed, type_one, type_two = marked_counts("U_bal", 3, 1, 3)
    assert (exposed, type_one, type_two) == (Fraction(1), Fraction(2), Fraction(0))
