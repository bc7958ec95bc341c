#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include "support.hpp"

using namespace svccomp;
using namespace svccomp::testing;

namespace {

// Independent classifier over plain lowercase strings: no index, no ParamSet.
std::string classify_by_hand(const std::set<std::string>& out, const std::set<std::string>& want) {
  bool covers = true, overlaps = false;
  for (const auto& w : want) {
    if (out.count(w)) overlaps = true;
    else covers = false;
  }
  if (covers) return out.size() == want.size() ? "Exact" : "Super";
  return overlaps ? "Partial" : "None";
}

std::set<std::string> lower(const ParamSet& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.canonical);
  return out;
}

}  // namespace

TEST_CASE("normalize_param trims and case-folds") {
  CHECK(normalize_param("HotelCost").canonical == "hotelcost");
  CHECK(normalize_param("Hotelcost") == normalize_param("HotelCost"));
  const auto city = normalize_param("  City ");
  CHECK(city.canonical == "city");
  CHECK(city.display == "City");
  CHECK_THROWS_AS(normalize_param("   "), RegistryError);
  CHECK_THROWS_AS(normalize_param(""), RegistryError);
  try {
    normalize_param(" \t", "services[2].inputs[0]");
  } catch (const RegistryError& e) {
    CHECK(std::string(e.what()).find("services[2].inputs[0]") != std::string::npos);
  }
}

TEST_CASE("normalization is idempotent") {
  for (const char* raw : {"A", " aBc ", "Tour Cost", "\tX\n", "PackageID"}) {
    const auto once = normalize_param(raw);
    const auto twice = normalize_param(once.display);
    CHECK(once.canonical == twice.canonical);
    CHECK(normalize_param(once.canonical).canonical == once.canonical);
  }
}

TEST_CASE("service ids order naturally") {
  CHECK(ServiceId("ws2") < ServiceId("ws10"));
  CHECK(ServiceId("ws9") < ServiceId("ws11"));
  CHECK(ServiceId("a") < ServiceId("b"));
  CHECK(ServiceId("ws1") < ServiceId("ws1a"));
  CHECK(ServiceId("ws01") != ServiceId("ws1"));
  CHECK((ServiceId("ws01") < ServiceId("ws1")) != (ServiceId("ws1") < ServiceId("ws01")));
}

TEST_CASE("travel fixture loads") {
  const Registry r = travel_registry();
  REQUIRE(r.services().size() == 11);
  std::vector<std::string> order;
  for (const auto& s : r.services()) order.push_back(s.id.str());
  CHECK(order == std::vector<std::string>{"ws1", "ws2", "ws3", "ws4", "ws5", "ws6", "ws7", "ws8", "ws9", "ws10",
                                          "ws11"});
  // Period, City, Date, HotelName, HotelCost, FlightInfo, FlightCost, CarType,
  // TaxiCost, TourInfo, TourCost, PackageID. "Hotelcost" folds into HotelCost.
  CHECK(r.parameters().size() == 12);
  CHECK(r.service(ServiceId("ws11")).outputs.size() == 7);
  CHECK(r.service(ServiceId("ws11")).outputs.contains(normalize_param("HotelCost")));
}

TEST_CASE("registry invariants hold on the fixture") {
  const Registry r = travel_registry();
  for (const auto& s : r.services()) {
    CHECK_FALSE(s.outputs.empty());
    for (const auto& p : s.inputs) CHECK(r.parameters().contains(p));
    for (const auto& p : s.outputs) CHECK(r.parameters().contains(p));
  }
  CHECK(std::is_sorted(r.services().begin(), r.services().end(),
                       [](const auto& a, const auto& b) { return a.id < b.id; }));
}

TEST_CASE("loading is deterministic") {
  const Registry a = travel_registry();
  const Registry b = travel_registry();
  CHECK(a == b);
  CHECK(load_registry(dump_registry(a)) == a);
}

TEST_CASE("empty registry") {
  const Registry r = load_registry(R"({"services": []})");
  CHECK(r.services().empty());
  CHECK(r.parameters().empty());
  CHECK(r.index().by_output.empty());
  CHECK(r.index().by_input.empty());
}

TEST_CASE("load_registry rejects bad documents") {
  auto issues_of = [](std::string_view doc) {
    try {
      load_registry(doc);
    } catch (const RegistryError& e) {
      return std::string(e.what());
    }
    return std::string("<accepted>");
  };
  SUBCASE("duplicate id") {
    const auto msg = issues_of(R"({"services": [
      {"id": "ws3", "name": "a", "inputs": [], "outputs": ["x"]},
      {"id": "ws3", "name": "b", "inputs": [], "outputs": ["y"]}]})");
    CHECK(msg.find("duplicate service id 'ws3'") != std::string::npos);
  }
  SUBCASE("empty outputs") {
    const auto msg = issues_of(R"({"services": [{"id": "ws7", "name": "a", "inputs": ["x"], "outputs": []}]})");
    CHECK(msg.find("service 'ws7'.outputs") != std::string::npos);
  }
  SUBCASE("malformed json") { CHECK(issues_of("{").find("malformed") != std::string::npos); }
  SUBCASE("empty file") { CHECK(issues_of("").find("malformed") != std::string::npos); }
  SUBCASE("unknown keys") {
    CHECK(issues_of(R"({"services": [], "extra": 1})").find("unknown top-level key 'extra'") != std::string::npos);
    const auto msg = issues_of(R"({"services": [{"id": "s", "name": "a", "inputs": [], "outputs": ["x"], "qos": 3}]})");
    CHECK(msg.find("service 's': unknown key 'qos'") != std::string::npos);
  }
  SUBCASE("missing field") {
    CHECK(issues_of(R"({"services": [{"id": "s", "inputs": [], "outputs": ["x"]}]})").find("missing field 'name'") !=
          std::string::npos);
  }
  SUBCASE("duplicate parameter inside a set") {
    const auto msg = issues_of(R"({"services": [{"id": "s", "name": "a", "inputs": ["City", "city "], "outputs": ["x"]}]})");
    CHECK(msg.find("duplicate parameter") != std::string::npos);
  }
  SUBCASE("blank parameter") {
    const auto msg = issues_of(R"({"services": [{"id": "s", "name": "a", "inputs": [" "], "outputs": ["x"]}]})");
    CHECK(msg.find("service 's'.inputs[0]") != std::string::npos);
  }
  SUBCASE("undeclared parameter") {
    const auto msg = issues_of(R"({"parameters": ["x"], "services": [{"id": "s", "name": "a", "inputs": ["y"], "outputs": ["x"]}]})");
    CHECK(msg.find("'y' is used by a service but not declared") != std::string::npos);
  }
  SUBCASE("missing services") { CHECK(issues_of("{}").find("missing top-level key 'services'") != std::string::npos); }
}

TEST_CASE("declared parameters may exceed what services use") {
  const Registry r = load_registry(
      R"({"parameters": ["x", "y", "spare"], "services": [{"id": "s", "name": "a", "inputs": ["y"], "outputs": ["X"]}]})");
  CHECK(r.parameters().size() == 3);
  CHECK(r.service(ServiceId("s")).outputs.begin()->display == "x");
}

TEST_CASE("producer index on the fixture") {
  const Registry r = travel_registry();
  const auto& idx = r.index();
  CHECK(idx.by_output.at(normalize_param("PackageID")) == id_set({"ws9"}));
  CHECK(idx.by_output.at(normalize_param("TourInfo")) == id_set({"ws4", "ws8"}));
  CHECK(idx.by_input.at(normalize_param("PackageID")) == id_set({"ws8", "ws11"}));
  CHECK(build_producer_index({}).by_output.empty());
}

TEST_CASE("producer index soundness") {
  const Registry r = travel_registry();
  const auto& idx = r.index();
  for (const auto& s : r.services()) {
    for (const auto& p : r.parameters()) {
      const bool out_listed = idx.by_output.contains(p) && idx.by_output.at(p).contains(s.id);
      const bool in_listed = idx.by_input.contains(p) && idx.by_input.at(p).contains(s.id);
      CHECK(out_listed == s.outputs.contains(p));
      CHECK(in_listed == s.inputs.contains(p));
    }
  }
}

TEST_CASE("classify_match examples") {
  const Registry r = travel_registry();
  const ParamSet want = params({"HotelName", "FlightInfo", "CarType", "TourCost"});
  CHECK(classify_match(r.service(ServiceId("ws10")).outputs, want) == MatchClass::Exact);
  CHECK(classify_match(r.service(ServiceId("ws11")).outputs, want) == MatchClass::Super);
  CHECK(classify_match(r.service(ServiceId("ws1")).outputs, want) == MatchClass::Partial);
  CHECK(classify_match(r.service(ServiceId("ws6")).outputs, want) == MatchClass::None);
  CHECK_THROWS_AS(classify_match(want, {}), ContractViolation);
}

TEST_CASE("classify_match partitions every subset pair of a 5-parameter universe") {
  const char* names[] = {"a", "b", "c", "d", "e"};
  auto subset = [&](unsigned mask) {
    ParamSet s;
    for (unsigned i = 0; i < 5; ++i) {
      if (mask & (1u << i)) s.insert(normalize_param(names[i]));
    }
    return s;
  };
  for (unsigned o = 0; o < 32; ++o) {
    for (unsigned d = 1; d < 32; ++d) {
      const auto got = classify_match(subset(o), subset(d));
      CHECK(to_string(got) == classify_by_hand(lower(subset(o)), lower(subset(d))));
    }
  }
}

TEST_CASE("find_matching_services examples") {
  const Registry r = travel_registry();
  const auto root = find_matching_services(r, params({"HotelName", "FlightInfo", "CarType", "TourCost"}));
  CHECK(root.exact == ids({"ws10"}));
  CHECK(root.super == ids({"ws11"}));
  CHECK(root.partial == ids({"ws1", "ws2", "ws3", "ws7"}));

  const auto pkg = find_matching_services(r, params({"PackageID"}));
  CHECK(pkg.exact == ids({"ws9"}));
  CHECK(pkg.super.empty());
  CHECK(pkg.partial.empty());

  const Registry with_orphan = load_registry(
      R"({"parameters": ["x", "orphan"], "services": [{"id": "s", "name": "a", "inputs": [], "outputs": ["x"]}]})");
  const auto none = find_matching_services(with_orphan, params({"orphan"}));
  CHECK(none.exact.empty());
  CHECK(none.super.empty());
  CHECK(none.partial.empty());
}

TEST_CASE("find_matching_services agrees with a full scan") {
  const Registry r = travel_registry();
  std::vector<ParamSet> probes;
  for (const auto& s : r.services()) {
    probes.push_back(s.outputs);
    probes.push_back(s.inputs.empty() ? s.outputs : s.inputs);
  }
  for (const auto& desired : probes) {
    const auto got = find_matching_services(r, desired);
    std::map<std::string, std::vector<std::string>> expected;
    for (const auto& s : r.services()) expected[classify_by_hand(lower(s.outputs), lower(desired))].push_back(s.id.str());
    auto strs = [](const std::vector<ServiceId>& v) {
      std::vector<std::string> out;
      for (const auto& id : v) out.push_back(id.str());
      return out;
    };
    CHECK(strs(got.exact) == expected["Exact"]);
    CHECK(strs(got.super) == expected["Super"]);
    CHECK(strs(got.partial) == expected["Partial"]);
  }
}

TEST_CASE("make_query resolves names case-insensitively") {
  const Registry r = travel_registry();
  const Query q = make_query(r, {"date", " CITY "}, {"hotelname"});
  CHECK(q.initial_inputs == params({"Date", "City"}));
  CHECK(q.desired_outputs.begin()->display == "HotelName");
  try {
    make_query(r, {"Date", "Weather"}, {"Visa"});
    FAIL("expected QueryError");
  } catch (const QueryError& e) {
    CHECK(e.unknown() == std::vector<std::string>{"Weather", "Visa"});
  }
  CHECK_THROWS_AS(make_query(r, {"Date"}, {}), QueryError);
}
