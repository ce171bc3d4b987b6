// isograd: classify filtered q-difference modules with a fixed graded part.
// Results go to stdout as canonical JSON, diagnostics to stderr.
// Exit codes: 0 ok, 1 usage, 2 parse/validation, 3 math precondition.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isograd/commands.hpp"

namespace {

using isograd::AnyDocument;
using isograd::ojson;

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        isograd::fail("parse", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

AnyDocument load(const std::string& path)
{
    return isograd::parse_document_text(slurp(path));
}

void emit(const ojson& result, const std::string& output_path)
{
    const std::string text = isograd::canon_dump(result);
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out)
        isograd::fail("parse", "cannot write '" + output_path + "'");
    out << text;
}

int exit_code_for(const isograd::Error& e)
{
    if (e.code() == "parse" || e.code() == "schema")
        return 2;
    return 3;
}

void report(const isograd::Error& e)
{
    ojson err;
    err["error"] = e.code();
    const std::string what = e.what();
    const auto sep = what.find(": ");
    err["detail"] = sep == std::string::npos ? what : what.substr(sep + 2);
    std::cerr << err.dump() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact classification of filtered q-difference modules"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("--output", output, "write the result to a file instead of stdout");

    std::string file_a, file_b, ring_spec, lambda;
    std::optional<std::pair<int, int>> window;
    std::vector<int> window_args;
    std::string verify_against;

    auto* dim = app.add_subcommand("dim", "affine-space dimension and delta table");
    dim->add_option("file", file_a)->required();

    auto* normalize = app.add_subcommand("normalize", "canonical window-supported form");
    normalize->add_option("file", file_a)->required();
    normalize->add_option("--verify-only", verify_against,
                          "re-verify a previously emitted normalization instead");

    auto* verify = app.add_subcommand("verify", "re-check an emitted gauge certificate");
    verify->add_option("original", file_a)->required();
    verify->add_option("normalized", file_b)->required();

    auto* equiv = app.add_subcommand("equiv", "gauge equivalence of two presentations");
    equiv->add_option("fileA", file_a)->required();
    equiv->add_option("fileB", file_b)->required();

    auto* ext = app.add_subcommand("ext", "Ext basis, delta, and block reduction");
    ext->add_option("file", file_a)->required();

    auto* hom = app.add_subcommand("hom", "Hom basis between the two graded blocks");
    hom->add_option("file", file_a)->required();
    hom->add_option("--window", window_args, "degree window d_lo d_hi")->expected(2);

    auto* act = app.add_subcommand("act", "apply the document's gauge to its blocks");
    act->add_option("file", file_a)->required();

    auto* sum = app.add_subcommand("sum", "Baer sum of two extension classes");
    sum->add_option("fileA", file_a)->required();
    sum->add_option("fileB", file_b)->required();

    auto* scale = app.add_subcommand("scale", "scalar multiple of an extension class");
    scale->add_option("lambda", lambda, "rational string, or a JSON array over a quotient ring")
        ->required();
    scale->add_option("file", file_a)->required();

    auto* basechange = app.add_subcommand("basechange", "extend scalars and check Hom/Ext");
    basechange->add_option("file", file_a)->required();
    basechange->add_option("--ring", ring_spec, "target coeff_ring as JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        ojson err;
        err["error"] = "usage";
        err["detail"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    if (!window_args.empty())
        window = std::make_pair(window_args[0], window_args[1]);

    try {
        ojson result;
        if (dim->parsed())
            result = isograd::cli::cmd_dim(load(file_a));
        else if (normalize->parsed())
            result = verify_against.empty()
                         ? isograd::cli::cmd_normalize(load(file_a))
                         : isograd::cli::cmd_verify(load(file_a), load(verify_against));
        else if (verify->parsed())
            result = isograd::cli::cmd_verify(load(file_a), load(file_b));
        else if (equiv->parsed())
            result = isograd::cli::cmd_equiv(load(file_a), load(file_b));
        else if (ext->parsed())
            result = isograd::cli::cmd_ext(load(file_a));
        else if (hom->parsed())
            result = isograd::cli::cmd_hom(load(file_a), window);
        else if (act->parsed())
            result = isograd::cli::cmd_act(load(file_a));
        else if (sum->parsed())
            result = isograd::cli::cmd_sum(load(file_a), load(file_b));
        else if (scale->parsed())
            result = isograd::cli::cmd_scale(lambda, load(file_a));
        else if (basechange->parsed()) {
            ojson ring_json;
            try {
                ring_json = ojson::parse(ring_spec);
            } catch (const nlohmann::json::parse_error& e) {
                isograd::fail("parse", std::string("bad --ring spec: ") + e.what());
            }
            result = isograd::cli::cmd_basechange(load(file_a), ring_json);
        }
        emit(result, output);
    } catch (const isograd::Error& e) {
        report(e);
        return exit_code_for(e);
    }
    return 0;
}
