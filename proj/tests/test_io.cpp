#include <gtest/gtest.h>

#include <filesystem>

#include "stoqext/io.hpp"
#include "stoqext/suite.hpp"

using namespace stoqext;

namespace {

std::vector<InstanceFile> corpus(const std::string& gen, const Json& params, std::size_t count) {
    std::vector<InstanceFile> out;
    for (std::size_t s = 0; s < count; ++s) out.push_back(generate_instance(gen, params, 100 + s));
    return out;
}

const CheckRecord* find(const Report& r, const std::string& name) {
    for (const auto& rec : r.records)
        if (rec.name == name) return &rec;
    return nullptr;
}

}  // namespace

TEST(Io, RoundTripsAreExact) {
    const std::vector<std::pair<std::string, Json>> gens{
        {"circuit", {{"register_bits", {1, 2}}, {"gates", 12}}},
        {"nonneg-psd", {{"dims", {2, 3}}}},
        {"planted", {{"dims", {2, 2, 2}}, {"w", 0.7}}},
        {"maximally-entangled", {{"d", 3}}},
        {"distribution", {{"dims", {3, 2}}, {"sparsity", 0.3}}},
        {"bosonic-state", {{"dims", {2, 3}}, {"copies", {3}}}},
        {"bosonic-state", {{"dims", {2, 2, 2}}, {"rank", 3}}},
    };
    const auto dir = std::filesystem::temp_directory_path() / "stoqext_io_test";
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const InstanceFile f = generate_instance(gens[k].first, gens[k].second, 7 + k);
        const Json j = to_json(f);
        const InstanceFile back = instance_from_json(j);
        EXPECT_EQ(to_json(back), j) << gens[k].first;
        // Through text on disk as well.
        const auto path = dir / ("f" + std::to_string(k) + ".json");
        write_json(path, j);
        const auto read = read_instances(path);
        ASSERT_EQ(read.size(), 1u);
        EXPECT_EQ(to_json(read[0]), j) << gens[k].first;
    }
    // Typed payloads survive as well.
    const InstanceFile m = generate_instance("nonneg-psd", {{"dims", {2, 3}}}, 3);
    EXPECT_EQ(instance_from_json(to_json(m)).matrix().matrix, m.matrix().matrix);
    const InstanceFile v = generate_instance("circuit", Json::object(), 3);
    EXPECT_EQ(acceptance_matrix(instance_from_json(to_json(v)).verifier()).matrix, acceptance_matrix(v.verifier()).matrix);
    const InstanceFile p = generate_instance("planted", Json::object(), 3);
    ASSERT_TRUE(instance_from_json(to_json(p)).witness().has_value());
    EXPECT_EQ(instance_from_json(to_json(p)).witness()->kron(), p.witness()->kron());

    Json arr = Json::array({to_json(m), to_json(v)});
    write_json(dir / "arr.json", arr);
    EXPECT_EQ(read_instances(dir / "arr.json").size(), 2u);
    std::filesystem::remove_all(dir);
}

TEST(Io, GeneratorsAreDeterministic) {
    for (const std::string& g : generator_names()) {
        EXPECT_EQ(to_json(generate_instance(g, Json::object(), 42)), to_json(generate_instance(g, Json::object(), 42)))
            << g;
        EXPECT_NE(to_json(generate_instance(g, Json::object(), 42)).dump(),
                  g == "maximally-entangled" ? "" : to_json(generate_instance(g, Json::object(), 43)).dump())
            << g;
    }
}

TEST(Io, EntangledFamilyEntries) {
    const RealOperator m = generate_instance("maximally-entangled", {{"d", 3}}, 0).matrix();
    for (Eigen::Index a = 0; a < 9; ++a)
        for (Eigen::Index b = 0; b < 9; ++b) {
            const bool diag_pair = a % 4 == 0 && b % 4 == 0;  // |ii> has index 4i for d = 3
            EXPECT_DOUBLE_EQ(m.matrix(a, b), diag_pair ? 1.0 / 3.0 : 0.0);
        }
}

TEST(Io, NonnegPsdGeneratorProperties) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const RealOperator m =
            generate_instance("nonneg-psd", {{"dims", {2, 3}}, {"scale", 0.8}, {"density", 0.5}}, s).matrix();
        EXPECT_TRUE(is_entrywise_nonneg(m.matrix));
        EXPECT_TRUE(psd_interval_check(m.matrix));
        EXPECT_NEAR(spectral_norm(m.matrix), 0.8, 1e-12);
    }
    const InstanceFile p = generate_instance("planted", {{"w", 0.6}}, 1);
    EXPECT_GE(p.metadata.known.at("witness_value"), 0.6 - 1e-12);
}

TEST(Io, BadInputs) {
    EXPECT_THROW(generate_instance("no-such-thing", Json::object(), 0), std::invalid_argument);
    EXPECT_THROW(generate_instance("nonneg-psd", {{"scale", 1.5}}, 0), std::invalid_argument);
    EXPECT_THROW(generate_instance("circuit", {{"register_bits", {8, 8}}}, 0), std::invalid_argument);
    Json j = to_json(generate_instance("nonneg-psd", Json::object(), 0));
    j["kind"] = "hologram";
    EXPECT_THROW(instance_from_json(j), std::invalid_argument);
    j = to_json(generate_instance("nonneg-psd", Json::object(), 0));
    EXPECT_THROW(instance_from_json(j).verifier(), std::invalid_argument);
    j["format_version"] = 99;
    EXPECT_THROW(instance_from_json(j), std::invalid_argument);
    EXPECT_THROW(read_instances("/nonexistent/file.json"), std::runtime_error);
    EXPECT_THROW(run_suite("no-such-suite", {}), std::invalid_argument);
    EXPECT_THROW(run_suite("sandwich", corpus("circuit", Json::object(), 1)), std::invalid_argument);
}

TEST(Io, EmptyInstanceListsGiveEmptyPassingReports) {
    for (const std::string& s : suite_names()) {
        if (s == "symmetrizer" || s == "plan-arithmetic") continue;  // parameter sweeps
        const Report r = run_suite(s, {});
        EXPECT_TRUE(r.records.empty()) << s;
        EXPECT_TRUE(r.ok()) << s;
    }
}

TEST(Io, SuitesAreDeterministicAndSorted) {
    const auto in = corpus("bosonic-state", {{"dims", {2, 2}}, {"copies", {3}}}, 4);
    const Report a = run_suite("conditioning", in);
    const Report b = run_suite("conditioning", in);
    EXPECT_EQ(to_json(a), to_json(b));
    EXPECT_TRUE(a.ok());
    for (std::size_t k = 1; k < a.records.size(); ++k) EXPECT_LE(a.records[k - 1].name, a.records[k].name);
    const Json j = to_json(a);
    for (const auto& rec : j.at("records")) {
        EXPECT_TRUE(rec.contains("lhs"));
        EXPECT_TRUE(rec.contains("rhs"));
        EXPECT_TRUE(rec.contains("tolerance"));
    }
}

TEST(Io, SandwichRowsForEntangledFamily) {
    std::vector<InstanceFile> in;
    for (std::size_t d = 2; d <= 4; ++d) in.push_back(generate_instance("maximally-entangled", {{"d", d}}, 0));
    SuiteConfig cfg;
    cfg.max_copies = 3;
    const Report r = run_suite("sandwich", in, cfg);
    EXPECT_TRUE(r.ok());
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string pre = "i000" + std::to_string(i) + ".";
        const CheckRecord* eq = find(r, pre + "R1.equals-lambda-max");
        const CheckRecord* lift = find(r, pre + "R1.lift");
        ASSERT_NE(eq, nullptr);
        ASSERT_NE(lift, nullptr);
        EXPECT_NEAR(eq->lhs, 1.0, 1e-9);
        EXPECT_NEAR(lift->lhs, 1.0 / static_cast<double>(i + 2), 1e-6);
    }
}

TEST(Io, ConfigDrivenSuitesPass) {
    EXPECT_TRUE(run_suite("symmetrizer", {}).ok());
    EXPECT_TRUE(run_suite("plan-arithmetic", {}).ok());
    const Report c = run_suite("collapse", corpus("circuit", {{"register_bits", {1, 1}}, {"gates", 5}}, 2));
    EXPECT_TRUE(c.ok());
    EXPECT_FALSE(c.records.empty());
}
