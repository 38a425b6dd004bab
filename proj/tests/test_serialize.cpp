#include "doctest.h"
#include "poa/prf.hpp"
#include "poa/serialize.hpp"

#include <filesystem>
#include <string>

using namespace poa;

namespace {
std::vector<std::uint8_t> bytes_of(std::string_view s) { return {s.begin(), s.end()}; }
}  // namespace

TEST_CASE("base64 test vectors") {
  const std::pair<const char*, const char*> vectors[] = {
      {"", ""},         {"f", "Zg=="},         {"fo", "Zm8="},         {"foo", "Zm9v"},
      {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"},
  };
  for (const auto& [plain, enc] : vectors) {
    CHECK(base64_encode(bytes_of(plain)) == enc);
    CHECK(base64_decode(enc) == std::optional(bytes_of(plain)));
  }
  CHECK_FALSE(base64_decode("Zm9").has_value());
  CHECK_FALSE(base64_decode("Zm9*").has_value());
  std::vector<std::uint8_t> all(256);
  for (int i = 0; i < 256; ++i) all[i] = static_cast<std::uint8_t>(i);
  CHECK(base64_decode(base64_encode(all)) == std::optional(all));
}

TEST_CASE("sha256 and the PRF tree") {
  CHECK(hex_encode(sha256("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const Prf root = Prf::from_seed("seed");
  CHECK(root.key() == Prf::from_seed("seed").key());
  CHECK(root.key() != Prf::from_seed("seed2").key());
  CHECK(root.derive("a", 0).key() != root.derive("a", 1).key());
  CHECK(root.derive("a", 0).key() != root.derive("b", 0).key());
  // Streams are deterministic and long outputs do not repeat blocks.
  RandomStream s1 = root.stream(), s2 = root.stream();
  std::vector<std::uint8_t> a(100), b(100);
  s1.fill(a);
  s2.fill(b);
  CHECK(a == b);
  CHECK(std::vector<std::uint8_t>(a.begin(), a.begin() + 32) != std::vector<std::uint8_t>(a.begin() + 32, a.begin() + 64));
  RandomStream u = root.derive("uniform").stream();
  std::array<int, 5> hist{};
  for (int i = 0; i < 5000; ++i) hist[u.uniform(5)]++;
  for (int h : hist) CHECK(h > 800);
}

TEST_CASE("byte reader") {
  ByteWriter w;
  w.tag("TEST");
  w.u8(7);
  w.u32(0x01020304);
  w.u64(0x0102030405060708ULL);
  const auto buf = w.take();
  CHECK(buf.size() == 17);
  CHECK(buf[5] == 0x01);
  CHECK(buf[8] == 0x04);

  ByteReader r(buf);
  r.expect_tag("TEST");
  CHECK(r.u8() == 7);
  CHECK(r.u32() == 0x01020304u);
  CHECK(r.offset() == 9);
  CHECK(r.u64() == 0x0102030405060708ULL);
  CHECK(r.done());
  CHECK_NOTHROW(r.expect_end());
  try {
    r.u8();
    FAIL("read past the end");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 17);
  }

  ByteReader bad(buf);
  CHECK_THROWS_AS(bad.expect_tag("NOPE"), ParseError);
  ByteReader extra(buf);
  extra.expect_tag("TEST");
  CHECK_THROWS_AS(extra.expect_end(), ParseError);

  // Counts larger than the remaining input are refused before allocating.
  ByteWriter cw;
  cw.u64(1'000'000);
  const auto cb = cw.take();
  ByteReader cr(cb);
  CHECK_THROWS_AS(cr.count(8), ParseError);
}

TEST_CASE("file writes refuse to overwrite") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "poa-test-serialize";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string path = (dir / "f.bin").string();
  const auto data = bytes_of("hello");
  write_file(path, data, false);
  CHECK(read_file(path) == data);
  CHECK_THROWS_AS(write_file(path, bytes_of("other"), false), FileExists);
  CHECK(read_file(path) == data);
  write_file(path, bytes_of("other"), true);
  CHECK(read_file(path) == bytes_of("other"));
  CHECK_THROWS_AS(read_file((dir / "missing").string()), Error);
  fs::remove_all(dir);
}
