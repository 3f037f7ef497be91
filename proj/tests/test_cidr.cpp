#include <doctest.h>

#include "hstm/cidr.hpp"
#include "hstm/errors.hpp"

using namespace hstm;

TEST_SUITE("cidr") {

TEST_CASE("parse and format round trip") {
  Cidr c = parse_cidr("10.0.0.0/8");
  CHECK(c.base == 0x0A000000u);
  CHECK(c.len == 8);
  CHECK(c.size() == (1u << 24));
  CHECK(format_cidr(c) == "10.0.0.0/8");

  CHECK(parse_ipv4("192.168.0.1") == 0xC0A80001u);
  CHECK_THROWS_AS(parse_cidr("10.0.0.0"), parameter_error);
  CHECK_THROWS_AS(parse_cidr("10.0.0.0/33"), parameter_error);
  CHECK_THROWS_AS(parse_ipv4("300.0.0.1"), parameter_error);
}

TEST_CASE("host bits are masked off") {
  Cidr c = parse_cidr("10.1.2.3/8");
  CHECK(c.base == 0x0A000000u);
}

TEST_CASE("membership") {
  RangeMask m({parse_cidr("10.0.0.0/8"), parse_cidr("192.168.0.0/16")});
  CHECK(m.contains(parse_ipv4("10.200.1.1")));
  CHECK(m.contains(parse_ipv4("192.168.255.255")));
  CHECK_FALSE(m.contains(parse_ipv4("192.169.0.0")));
  CHECK_FALSE(m.contains(parse_ipv4("9.255.255.255")));
  CHECK(m.address_count() == (1u << 24) + (1u << 16));
}

TEST_CASE("full and empty masks") {
  CHECK(RangeMask::full().contains(0));
  CHECK(RangeMask::full().contains(0xFFFFFFFFu));
  CHECK(RangeMask::full().address_count() == (std::uint64_t{1} << 32));
  CHECK_FALSE(RangeMask::empty().contains(0));
}

TEST_CASE("overlapping prefixes rejected") {
  CHECK_THROWS_AS(RangeMask({parse_cidr("10.0.0.0/8"), parse_cidr("10.1.0.0/16")}),
                  parameter_error);
}

}  // TEST_SUITE
