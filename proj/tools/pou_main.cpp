// pou: exact calculus on finitely supported partitions of unity.
//
// Every subcommand reads JSON documents (file path or "-" for stdin), writes
// one JSON document to stdout, and exits 0 on success, 1 on a domain error
// (well-formed input violating a semantic precondition) or failing check
// suite, 2 on malformed input or usage errors. All arithmetic is exact.

#include "pou/calculus.hpp"
#include "pou/complexes.hpp"
#include "pou/errors.hpp"
#include "pou/json_io.hpp"
#include "pou/sampling.hpp"
#include "pou/suites.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using pou::io::Json;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw pou::ParseError("cannot open \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

Json load_document(const std::string& path) {
    return pou::io::parse_text(read_input(path));
}

void print_document(const Json& doc) { std::cout << pou::io::dump(doc); }

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream stream(text);
    while (std::getline(stream, token, ',')) out.push_back(token);
    return out;
}

Json report_json(const pou::suites::SuiteReport& report) {
    Json doc = Json::object();
    doc["kind"] = "check_report";
    doc["metadata"] = pou::io::standard_metadata();
    doc["suite"] = report.suite;
    doc["seed"] = report.seed;
    doc["cases"] = report.cases;
    doc["passes"] = report.passes;
    doc["failures"] = report.failures;
    doc["ok"] = report.ok();
    Json counterexamples = Json::array();
    for (const auto& line : report.counterexamples) counterexamples.push_back(line);
    doc["counterexamples"] = std::move(counterexamples);
    Json notes = Json::array();
    for (const auto& line : report.notes) notes.push_back(line);
    doc["notes"] = std::move(notes);
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus on finitely supported partitions of unity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("pou ") + pou::io::kToolVersion);

    // Reserved: this tool has no precision knob because nothing is rounded.
    std::string precision;
    CLI::Option* precision_option =
        app.add_option("--precision", precision,
                       "reserved; rejected, all arithmetic is exact");

    int exit_code = 0;
    const auto guard_precision = [&] {
        if (precision_option->count() > 0) {
            throw pou::ParseError(
                "--precision is not supported: results are exact rationals");
        }
    };

    // derive
    auto* cmd_derive = app.add_subcommand("derive", "derivative of a prob_vector");
    auto derive_in = std::make_shared<std::string>("-");
    cmd_derive->add_option("input", *derive_in, "prob_vector document or -");
    cmd_derive->fallthrough();
    cmd_derive->callback([&, derive_in] {
        guard_precision();
        const auto x = pou::io::parse_prob_vector(load_document(*derive_in));
        print_document(pou::io::emit_derived_vector(pou::derive(x)));
    });

    // integrate
    auto* cmd_integrate =
        app.add_subcommand("integrate", "integral of a derived_vector");
    auto integrate_in = std::make_shared<std::string>("-");
    cmd_integrate->add_option("input", *integrate_in, "derived_vector document or -");
    cmd_integrate->fallthrough();
    cmd_integrate->callback([&, integrate_in] {
        guard_precision();
        const auto d = pou::io::parse_derived_vector(load_document(*integrate_in));
        print_document(pou::io::emit_prob_vector(pou::integrate(d)));
    });

    // join
    auto* cmd_join =
        app.add_subcommand("join", "convex combination of two prob_vectors");
    auto join_f = std::make_shared<std::string>();
    auto join_g = std::make_shared<std::string>();
    auto join_alpha = std::make_shared<std::string>();
    cmd_join->add_option("first", *join_f, "prob_vector document, - or the word none")
        ->required();
    cmd_join->add_option("second", *join_g, "prob_vector document, - or the word none")
        ->required();
    cmd_join->add_option("--alpha", *join_alpha, "coefficient of the first operand")
        ->required();
    cmd_join->fallthrough();
    cmd_join->callback([&, join_f, join_g, join_alpha] {
        guard_precision();
        if (*join_f == "-" && *join_g == "-") {
            throw pou::ParseError("only one operand can come from stdin");
        }
        std::optional<pou::ProbVector> f;
        std::optional<pou::ProbVector> g;
        if (*join_f != "none") {
            f = pou::io::parse_prob_vector(load_document(*join_f));
        }
        if (*join_g != "none") {
            g = pou::io::parse_prob_vector(load_document(*join_g));
        }
        const pou::Rational alpha = pou::parse_rational(*join_alpha);
        print_document(pou::io::emit_prob_vector(pou::join_points(f, g, alpha)));
    });

    // truncate
    auto* cmd_truncate =
        app.add_subcommand("truncate", "order truncation of a prob_vector");
    auto truncate_in = std::make_shared<std::string>("-");
    auto truncate_order_arg = std::make_shared<int>(0);
    cmd_truncate->add_option("input", *truncate_in, "prob_vector document or -");
    cmd_truncate->add_option("--order", *truncate_order_arg, "largest order to keep")
        ->required();
    cmd_truncate->fallthrough();
    cmd_truncate->callback([&, truncate_in, truncate_order_arg] {
        guard_precision();
        const auto x = pou::io::parse_prob_vector(load_document(*truncate_in));
        print_document(
            pou::io::emit_prob_vector(pou::truncate_order(x, *truncate_order_arg)));
    });

    // shrink
    auto* cmd_shrink =
        app.add_subcommand("shrink", "well-ordered shrinking of a prob_vector");
    auto shrink_in = std::make_shared<std::string>("-");
    auto shrink_ordering = std::make_shared<std::string>();
    cmd_shrink->add_option("input", *shrink_in, "prob_vector document or -");
    cmd_shrink->add_option("--ordering", *shrink_ordering,
                           "comma-separated label order (default: label order)");
    cmd_shrink->fallthrough();
    cmd_shrink->callback([&, shrink_in, shrink_ordering] {
        guard_precision();
        const auto x = pou::io::parse_prob_vector(load_document(*shrink_in));
        std::vector<pou::VertexLabel> ordering;
        if (shrink_ordering->empty()) {
            ordering = x.weights().support();
        } else {
            for (const auto& token : split_csv(*shrink_ordering)) {
                if (!pou::is_valid_input_label(token)) {
                    throw pou::ParseError("invalid ordering label \"" + token + "\"");
                }
                ordering.push_back(token);
            }
        }
        print_document(
            pou::io::emit_weight_vector(pou::shrink_wellordered(x, ordering)));
    });

    // approx
    auto* cmd_approx =
        app.add_subcommand("approx", "half-maximum approximation of a prob_vector");
    auto approx_in = std::make_shared<std::string>("-");
    cmd_approx->add_option("input", *approx_in, "prob_vector document or -");
    cmd_approx->fallthrough();
    cmd_approx->callback([&, approx_in] {
        guard_precision();
        const auto x = pou::io::parse_prob_vector(load_document(*approx_in));
        print_document(pou::io::emit_prob_vector(pou::half_max_approx(x)));
    });

    // layers
    auto* cmd_layers =
        app.add_subcommand("layers", "dyadic layer splitting of a prob_vector");
    auto layers_in = std::make_shared<std::string>("-");
    auto layers_depth = std::make_shared<int>(0);
    cmd_layers->add_option("input", *layers_in, "prob_vector document or -");
    cmd_layers->add_option("--depth", *layers_depth, "number of halving steps")
        ->required();
    cmd_layers->fallthrough();
    cmd_layers->callback([&, layers_in, layers_depth] {
        guard_precision();
        const auto x = pou::io::parse_prob_vector(load_document(*layers_in));
        const auto layers = pou::dyadic_layers(x, *layers_depth);
        print_document(pou::io::emit_layer_list(layers));
    });

    // subdivide
    auto* cmd_subdivide =
        app.add_subcommand("subdivide", "barycentric subdivision of a complex");
    auto subdivide_in = std::make_shared<std::string>("-");
    auto subdivide_iterations = std::make_shared<int>(1);
    cmd_subdivide->add_option("input", *subdivide_in, "complex document or -");
    cmd_subdivide->add_option("--iterations", *subdivide_iterations,
                              "how many times to subdivide (0 echoes the "
                              "canonical form)");
    cmd_subdivide->fallthrough();
    cmd_subdivide->callback([&, subdivide_in, subdivide_iterations] {
        guard_precision();
        if (*subdivide_iterations < 0) {
            throw pou::ParseError("--iterations must be >= 0");
        }
        auto complex = pou::io::parse_complex(load_document(*subdivide_in));
        for (int i = 0; i < *subdivide_iterations; ++i) {
            complex = pou::barycentric_subdivision(complex);
        }
        print_document(pou::io::emit_complex(complex));
    });

    // complex-join
    auto* cmd_complex_join =
        app.add_subcommand("complex-join", "join of two complexes");
    auto cjoin_a = std::make_shared<std::string>();
    auto cjoin_b = std::make_shared<std::string>();
    cmd_complex_join->add_option("first", *cjoin_a, "complex document or -")->required();
    cmd_complex_join->add_option("second", *cjoin_b, "complex document or -")
        ->required();
    cmd_complex_join->fallthrough();
    cmd_complex_join->callback([&, cjoin_a, cjoin_b] {
        guard_precision();
        if (*cjoin_a == "-" && *cjoin_b == "-") {
            throw pou::ParseError("only one operand can come from stdin");
        }
        const auto a = pou::io::parse_complex(load_document(*cjoin_a));
        const auto b = pou::io::parse_complex(load_document(*cjoin_b));
        print_document(pou::io::emit_complex(pou::join_complexes(a, b)));
    });

    // nerve
    auto* cmd_nerve = app.add_subcommand("nerve", "nerve of a point_list");
    auto nerve_in = std::make_shared<std::string>("-");
    cmd_nerve->add_option("input", *nerve_in, "point_list document or -");
    cmd_nerve->fallthrough();
    cmd_nerve->callback([&, nerve_in] {
        guard_precision();
        const auto points = pou::io::parse_point_list(load_document(*nerve_in));
        print_document(pou::io::emit_complex(pou::nerve_of_sample(points)));
    });

    // restrict
    auto* cmd_restrict = app.add_subcommand(
        "restrict", "restrict a point_list to the keys realized by a subset");
    auto restrict_in = std::make_shared<std::string>("-");
    auto restrict_subset = std::make_shared<std::string>();
    cmd_restrict->add_option("input", *restrict_in, "point_list document or -");
    cmd_restrict
        ->add_option("--subset", *restrict_subset,
                     "comma-separated point indices (0-based)")
        ->required();
    cmd_restrict->fallthrough();
    cmd_restrict->callback([&, restrict_in, restrict_subset] {
        guard_precision();
        const auto points = pou::io::parse_point_list(load_document(*restrict_in));
        std::set<std::size_t> subset;
        for (const auto& token : split_csv(*restrict_subset)) {
            try {
                std::size_t consumed = 0;
                const unsigned long long value = std::stoull(token, &consumed);
                if (consumed != token.size()) throw std::invalid_argument(token);
                subset.insert(static_cast<std::size_t>(value));
            } catch (const std::exception&) {
                throw pou::ParseError("invalid subset index \"" + token + "\"");
            }
        }
        const auto result = pou::restrict_nerve(points, subset);
        print_document(pou::io::emit_restrict_result(result));
    });

    // cover-pou
    auto* cmd_cover_pou = app.add_subcommand(
        "cover-pou", "distance partition of unity for a sample and a cover");
    auto cover_sample = std::make_shared<std::string>();
    auto cover_cover = std::make_shared<std::string>();
    cmd_cover_pou->add_option("sample", *cover_sample, "sample document or -")
        ->required();
    cmd_cover_pou->add_option("cover", *cover_cover, "cover document or -")->required();
    cmd_cover_pou->fallthrough();
    cmd_cover_pou->callback([&, cover_sample, cover_cover] {
        guard_precision();
        if (*cover_sample == "-" && *cover_cover == "-") {
            throw pou::ParseError("only one operand can come from stdin");
        }
        const auto sample = pou::io::parse_sample(load_document(*cover_sample));
        const auto cover = pou::io::parse_cover(load_document(*cover_cover));
        const auto points = pou::distance_pou(sample, cover);
        print_document(pou::io::emit_point_list(
            points, {{"all_covered_surrogate",
                      pou::format_rational(pou::all_covered_surrogate(sample))}}));
    });

    // cech
    auto* cmd_cech = app.add_subcommand(
        "cech", "open-ball cover, partition of unity and nerve of a sample");
    auto cech_in = std::make_shared<std::string>("-");
    auto cech_radius = std::make_shared<std::string>();
    cmd_cech->add_option("input", *cech_in, "sample document or -");
    cmd_cech->add_option("--radius", *cech_radius, "ball radius (rational)")
        ->required();
    cmd_cech->fallthrough();
    cmd_cech->callback([&, cech_in, cech_radius] {
        guard_precision();
        const auto sample = pou::io::parse_sample(load_document(*cech_in));
        const auto result = pou::cech_pipeline(sample, pou::parse_rational(*cech_radius));
        print_document(pou::io::emit_cech_result(
            result, {{"all_covered_surrogate",
                      pou::format_rational(pou::all_covered_surrogate(sample))}}));
    });

    // realize
    auto* cmd_realize =
        app.add_subcommand("realize", "ambient coordinates of a prob_vector");
    auto realize_in = std::make_shared<std::string>("-");
    auto realize_coords = std::make_shared<std::string>();
    cmd_realize->add_option("input", *realize_in, "prob_vector document or -");
    cmd_realize->add_option("--coords", *realize_coords, "coords document path")
        ->required();
    cmd_realize->fallthrough();
    cmd_realize->callback([&, realize_in, realize_coords] {
        guard_precision();
        if (*realize_in == "-" && *realize_coords == "-") {
            throw pou::ParseError("only one operand can come from stdin");
        }
        const auto x = pou::io::parse_prob_vector(load_document(*realize_in));
        const auto geometry = pou::io::parse_coords(load_document(*realize_coords));
        print_document(pou::io::emit_realization(pou::realize(x, geometry)));
    });

    // check
    auto* cmd_check = app.add_subcommand("check", "run a seeded self-check suite");
    auto check_suite = std::make_shared<std::string>();
    auto check_seed = std::make_shared<std::uint64_t>(1);
    auto check_cases = std::make_shared<long long>(0);
    auto check_serial = std::make_shared<bool>(false);
    cmd_check
        ->add_option("--suite", *check_suite,
                     "one of: " + [] {
                         std::string names;
                         for (const auto& name : pou::suites::suite_names()) {
                             if (!names.empty()) names += ", ";
                             names += name;
                         }
                         return names;
                     }())
        ->required();
    cmd_check->add_option("--seed", *check_seed, "rng seed (default 1)");
    CLI::Option* cases_option =
        cmd_check->add_option("--cases", *check_cases, "case count (default per suite)");
    cmd_check->add_flag("--serial", *check_serial, "run without parallelism");
    cmd_check->fallthrough();
    cmd_check->callback([&, check_suite, check_seed, check_cases, check_serial,
                         cases_option] {
        guard_precision();
        if (!pou::suites::is_suite_name(*check_suite)) {
            throw pou::ParseError("unknown suite \"" + *check_suite + "\"");
        }
        const long long cases = cases_option->count() > 0
                                    ? *check_cases
                                    : pou::suites::default_cases(*check_suite);
        const auto report = pou::suites::run_suite(*check_suite, *check_seed, cases,
                                                   !*check_serial);
        print_document(report_json(report));
        if (!report.ok()) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_document(pou::io::emit_error("cli_usage", e.what()));
        return 2;
    } catch (const pou::DomainError& e) {
        print_document(pou::io::emit_error(e.precondition(), e.what()));
        return 1;
    } catch (const pou::ParseError& e) {
        print_document(pou::io::emit_error("malformed_input", e.what()));
        return 2;
    } catch (const nlohmann::json::exception& e) {
        print_document(pou::io::emit_error("malformed_input", e.what()));
        return 2;
    }
    return exit_code;
}
