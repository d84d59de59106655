#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>

#include "histnorm/corpus.hpp"
#include "histnorm/significance.hpp"
#include "support.hpp"

using namespace histnorm;

TEST_CASE("char_tokenize splits words into characters with boundary markers") {
  const std::u32string seq = char_tokenize("vn bocado");
  const std::u32string expected = {U'v', U'n', kBoundary, U'b', U'o', U'c', U'a', U'd', U'o'};
  CHECK(seq == expected);
}

TEST_CASE("char_tokenize of the empty sentence is empty") {
  CHECK(char_tokenize("").empty());
}

TEST_CASE("whitespace runs collapse to one boundary") {
  const std::u32string seq = char_tokenize("a  b");
  const std::u32string expected = {U'a', kBoundary, U'b'};
  CHECK(seq == expected);
  CHECK(char_tokenize("  a \t b  ") == expected);
}

TEST_CASE("detokenize inverts char_tokenize") {
  const std::u32string seq = {U'v', U'n', kBoundary, U'b', U'o', U'c', U'a', U'd', U'o'};
  CHECK(detokenize(seq) == "vn bocado");
  CHECK(detokenize(std::u32string()) == "");
}

TEST_CASE("detokenize rejects malformed sequences") {
  CHECK_THROWS_AS(detokenize(std::u32string{kBoundary, U'a'}), DataError);
  CHECK_THROWS_AS(detokenize(std::u32string{U'a', kBoundary}), DataError);
  CHECK_THROWS_AS(detokenize(std::u32string{U'a', kBoundary, kBoundary, U'b'}), DataError);
}

TEST_CASE("round trip is identity on whitespace-normalized text") {
  for (const std::string& s : testsupport::sample_sentences(200, 7)) {
    CHECK(detokenize(char_tokenize(s)) == s);
  }
  // Multi-space input maps onto its single-space form.
  CHECK(detokenize(char_tokenize("como   estays,  Rozinante")) == "como estays, Rozinante");
}

TEST_CASE("character sequences never contain raw whitespace") {
  SplitMix64 rng = stream_for(99, 0);
  for (int iter = 0; iter < 200; ++iter) {
    std::u32string raw;
    const std::size_t len = rng.next() % 40;
    for (std::size_t i = 0; i < len; ++i) {
      const std::uint64_t pick = rng.next() % 100;
      if (pick < 20) {
        const char32_t spaces[] = {U' ', U'\t', 0x00A0, 0x2003, 0x3000};
        raw.push_back(spaces[rng.next() % 5]);
      } else if (pick < 80) {
        raw.push_back(static_cast<char32_t>(U'a' + rng.next() % 26));
      } else {
        raw.push_back(static_cast<char32_t>(0xE1 + rng.next() % 20));  // accented range
      }
    }
    const std::u32string seq = char_tokenize(utf8::encode(raw));
    for (char32_t c : seq) CHECK_FALSE(utf8::is_space(c));
    if (!seq.empty()) {
      CHECK(seq.front() != kBoundary);
      CHECK(seq.back() != kBoundary);
      for (std::size_t i = 1; i < seq.size(); ++i)
        CHECK_FALSE((seq[i] == kBoundary && seq[i - 1] == kBoundary));
    }
  }
}

TEST_CASE("load_parallel pairs lines in order") {
  const auto dir = testsupport::temp_dir("corpus_load");
  testsupport::write_file(dir / "a.src", "uno\ndos\ntres\n");
  testsupport::write_file(dir / "a.tgt", "one\ntwo\nthree\n");
  const ParallelCorpus c = load_parallel(dir / "a.src", dir / "a.tgt", "toy", Split::train);
  REQUIRE(c.pairs.size() == 3);
  CHECK(c.pairs[0].first == "uno");
  CHECK(c.pairs[0].second == "one");
  CHECK(c.pairs[2].first == "tres");
  CHECK(c.pairs[2].second == "three");
}

TEST_CASE("load_parallel reports line count mismatches with both counts") {
  const auto dir = testsupport::temp_dir("corpus_mismatch");
  testsupport::write_file(dir / "b.src", "1\n2\n3\n4\n");
  testsupport::write_file(dir / "b.tgt", "1\n2\n3\n4\n5\n");
  try {
    load_parallel(dir / "b.src", dir / "b.tgt", "bad", Split::train);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("4") != std::string::npos);
    CHECK(msg.find("5") != std::string::npos);
  }
}

TEST_CASE("load_parallel rejects invalid UTF-8 with the line number") {
  const auto dir = testsupport::temp_dir("corpus_utf8");
  testsupport::write_file(dir / "c.src", "ok\n\xFF\xFE broken\n");
  testsupport::write_file(dir / "c.tgt", "ok\nok\n");
  try {
    load_parallel(dir / "c.src", dir / "c.tgt", "bad", Split::train);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("corpus_stats on a hand-counted toy corpus") {
  ParallelCorpus c;
  c.name = "toy";
  c.pairs = {{"vn bocado vn", "un bocado un"}, {"dexa la casa", "deja la casa"}};
  const CorpusStats st = corpus_stats(c);
  CHECK(st.sentences == 2);
  CHECK(st.tokens_src == 6);
  CHECK(st.tokens_tgt == 6);
  // src types: vn, bocado, dexa, la, casa ; tgt types: un, bocado, deja, la, casa
  CHECK(st.vocab_src == 5);
  CHECK(st.vocab_tgt == 5);
  // vn, vn, dexa differ from their aligned words
  CHECK(st.nonmodern_words == 3);
}

TEST_CASE("corpus_stats counts zero nonmodern words when source equals target") {
  ParallelCorpus c;
  c.pairs = {{"a b c", "a b c"}, {"hola mundo", "hola mundo"}};
  CHECK(corpus_stats(c).nonmodern_words == 0);
}

TEST_CASE("corpus_stats counts gap-aligned source words as nonmodern") {
  ParallelCorpus c;
  c.pairs = {{"a b extra c", "a b c"}};
  const CorpusStats st = corpus_stats(c);
  CHECK(st.nonmodern_words == 1);
}

TEST_CASE("corpus_stats is invariant under sentence order permutation") {
  const auto sentences = testsupport::sample_sentences(30, 3);
  ParallelCorpus a, b;
  for (std::size_t i = 0; i < sentences.size(); ++i)
    a.pairs.emplace_back(sentences[i], sentences[(i * 7) % sentences.size()]);
  b.pairs = a.pairs;
  std::reverse(b.pairs.begin(), b.pairs.end());
  const CorpusStats sa = corpus_stats(a);
  const CorpusStats sb = corpus_stats(b);
  CHECK(sa.tokens_src == sb.tokens_src);
  CHECK(sa.tokens_tgt == sb.tokens_tgt);
  CHECK(sa.vocab_src == sb.vocab_src);
  CHECK(sa.vocab_tgt == sb.vocab_tgt);
  CHECK(sa.nonmodern_words == sb.nonmodern_words);
}
