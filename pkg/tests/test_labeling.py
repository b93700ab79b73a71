import io
from datetime import date

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newsquality.io import HeadlineRecord, RawDataset
from newsquality.labeling import (
    DEFAULT_THRESHOLD,
    DomainError,
    DomainQualityTable,
    Threshold,
    binarize,
    compute_threshold,
    extract_domain,
    join_pc1,
    load_pc1_table,
)
from newsquality.schema import FeatureSchema

SCHEMA = FeatureSchema([("f", "numeric")])


def record(url, when=date(2020, 1, 1)):
    return HeadlineRecord(url, "one two three", when, np.array([1.0]))


class TestExtractDomain:
    def test_full_url_cleaned(self):
        assert extract_domain("https://www.Example.com/news/a.html?x=1") == "example.com"

    def test_subdomain_and_port_reduced(self):
        assert extract_domain("http://sports.site.com:8080/sec/story") == "site.com"

    def test_bare_domain_identity(self):
        assert extract_domain("example.com") == "example.com"

    @pytest.mark.parametrize(
        "url,expected",
        [
            ("HTTPS://NEWS.SITE.COM/A#frag", "site.com"),
            ("ftp://user:pw@files.example.com/x", "example.com"),
            ("www.example.com", "example.com"),
            ("a.b.c.d.com/deep/path", "d.com"),
            ("example.com.", "example.com"),
        ],
    )
    def test_cleaning_cases(self, url, expected):
        assert extract_domain(url) == expected

    @pytest.mark.parametrize("url", ["", "   ", "https:///path", "no spaces allowed.com x"[:-1] + " x"])
    def test_unusable_urls_raise(self, url):
        with pytest.raises(DomainError):
            extract_domain(url)

    def test_require_com_flag(self):
        assert extract_domain("https://a.b.com", require_com=True) == "b.com"
        with pytest.raises(DomainError):
            extract_domain("https://a.b.org", require_com=True)

    @settings(max_examples=100, deadline=None)
    @given(
        st.builds(
            lambda scheme, sub, name, tld, path: f"{scheme}{sub}{name}.{tld}{path}",
            st.sampled_from(["", "http://", "https://", "HTTPS://www."]),
            st.sampled_from(["", "news.", "a.b."]),
            st.text(alphabet="abcdefgh0123-", min_size=1, max_size=8).filter(
                lambda s: s.strip("-") == s
            ),
            st.sampled_from(["com", "net", "co"]),
            st.sampled_from(["", "/", "/x/y?q=1", ":8080/z", "#frag"]),
        )
    )
    def test_idempotent(self, url):
        try:
            once = extract_domain(url)
        except DomainError:
            return
        assert extract_domain(once) == once


class TestQualityTable:
    def test_load_and_lookup(self):
        table = load_pc1_table(io.StringIO("domain,pc1\ncnn.com,0.93\n"))
        assert table.get("cnn.com") == 0.93
        assert "cnn.com" in table and "bbc.com" not in table

    def test_domains_normalized_on_load(self):
        table = load_pc1_table(io.StringIO("domain,pc1\nhttps://www.CNN.com/,0.5\n"))
        assert table.get("cnn.com") == 0.5

    def test_duplicate_domain_fatal(self):
        text = "domain,pc1\na.com,0.5\nwww.a.com,0.6\n"
        with pytest.raises(ValueError, match="duplicate"):
            load_pc1_table(io.StringIO(text))

    def test_out_of_range_fatal(self):
        with pytest.raises(ValueError):
            load_pc1_table(io.StringIO("domain,pc1\nx.com,1.2\n"))
        with pytest.raises(ValueError):
            load_pc1_table(io.StringIO("domain,pc1\nx.com,-0.1\n"))

    def test_bad_header_fatal(self):
        with pytest.raises(ValueError):
            load_pc1_table(io.StringIO("site,score\nx.com,0.5\n"))


class TestThreshold:
    def test_fixed_mode_value(self):
        t = compute_threshold([], "fixed")
        assert t.value == 0.8163
        assert t.value == DEFAULT_THRESHOLD
        assert t.provenance == "fixed"

    def test_median_odd_count(self):
        assert compute_threshold([0.2, 0.8, 0.9], "median").value == 0.8

    def test_median_even_count_takes_lower(self):
        assert compute_threshold([0.2, 0.4, 0.6, 0.9], "median").value == 0.4

    def test_median_empty_errors(self):
        with pytest.raises(ValueError):
            compute_threshold([], "median")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            compute_threshold([0.5], "auto")

    def test_threshold_range_validated(self):
        with pytest.raises(ValueError):
            Threshold(1.5, "fixed")


class TestBinarize:
    T = Threshold(0.8163, "fixed")

    def test_above(self):
        assert binarize(0.9, self.T) == 1

    def test_below(self):
        assert binarize(0.5, self.T) == 0

    def test_boundary_equality_is_zero(self):
        assert binarize(0.8163, self.T) == 0

    def test_monotone(self):
        """pc1_a > pc1_b and label(b)=1 implies label(a)=1."""
        values = np.linspace(0, 1, 101)
        labels = [binarize(v, self.T) for v in values]
        assert labels == sorted(labels)

    def test_range_check(self):
        with pytest.raises(ValueError):
            binarize(1.1, self.T)


class TestJoin:
    def test_matched_and_unmatched(self):
        table = DomainQualityTable({"cnn.com": 0.93})
        data = RawDataset(SCHEMA, [record("https://cnn.com/a"), record("https://other.com/b")])
        result = join_pc1(data, table)
        assert len(result.matched) == 1
        assert result.matched[0][1] == "cnn.com"
        assert result.matched[0][2] == 0.93
        assert result.unmatched == 1
        assert result.skipped_bad_url == 0

    def test_bad_url_skipped_and_counted(self):
        table = DomainQualityTable({"cnn.com": 0.93})
        data = RawDataset(SCHEMA, [record("   "), record("https://cnn.com/a")])
        result = join_pc1(data, table)
        assert len(result.matched) == 1
        assert result.skipped_bad_url == 1

    def test_join_deterministic_and_domain_consistent(self):
        table = DomainQualityTable({"a.com": 0.9, "b.com": 0.2})
        records = [record(f"https://{d}/x{i}") for i, d in
                   enumerate(["a.com", "b.com", "a.com", "sub.a.com"])]
        data = RawDataset(SCHEMA, records)
        first = join_pc1(data, table)
        second = join_pc1(data, table)
        assert [(m[1], m[2]) for m in first.matched] == [(m[1], m[2]) for m in second.matched]
        by_domain = {}
        for _rec, domain, pc1 in first.matched:
            by_domain.setdefault(domain, set()).add(pc1)
        assert all(len(v) == 1 for v in by_domain.values())
