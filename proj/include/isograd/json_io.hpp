#ifndef ISOGRAD_JSON_IO_HPP
#define ISOGRAD_JSON_IO_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "isograd/moduli.hpp"

namespace isograd {

using ojson = nlohmann::ordered_json;

// Canonical text form: one fixed dump style, keys in insertion order,
// degree keys numerically ascending, rationals reduced. Identical values
// always serialize to identical bytes.
inline std::string canon_dump(const ojson& j) { return j.dump(1, ' ') + "\n"; }

namespace io {

inline int parse_int_key(const std::string& s)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        fail("schema", "bad integer key '" + s + "'");
    }
    require(used == s.size(), "schema", "bad integer key '" + s + "'");
    return v;
}

inline const ojson& member(const ojson& j, const char* key)
{
    auto it = j.find(key);
    require(it != j.end(), "schema", std::string("missing key '") + key + "'");
    return *it;
}

inline std::string string_member(const ojson& j, const char* key)
{
    const ojson& v = member(j, key);
    require(v.is_string(), "schema", std::string("key '") + key + "' must be a string");
    return v.get<std::string>();
}

inline CoeffRing ring_from_json(const ojson& j)
{
    require(j.is_object(), "schema", "coeff_ring must be an object");
    const std::string kind = string_member(j, "kind");
    if (kind == "Q") {
        return CoeffRing::rationals();
    }
    if (kind == "quotient") {
        const ojson& mod = member(j, "modulus");
        require(mod.is_array(), "schema", "modulus must be an array of rational strings");
        std::vector<Rat> coeffs;
        for (const auto& c : mod) {
            require(c.is_string(), "schema", "modulus coefficients must be rational strings");
            coeffs.push_back(Rat::parse(c.get<std::string>()));
        }
        return CoeffRing::quotient(std::move(coeffs));
    }
    fail("schema", "coeff_ring kind must be 'Q' or 'quotient'");
}

inline ojson ring_to_json(const CoeffRing& ring)
{
    ojson j;
    if (ring.is_rationals()) {
        j["kind"] = "Q";
    } else {
        j["kind"] = "quotient";
        ojson mod = ojson::array();
        for (const Rat& c : ring.modulus)
            mod.push_back(c.str());
        j["modulus"] = std::move(mod);
    }
    return j;
}

template <class S>
S scalar_from_json(const ojson& j, const std::shared_ptr<const QuotCtx>& ctx)
{
    if constexpr (std::is_same_v<S, Rat>) {
        (void)ctx;
        require(j.is_string(), "schema", "rational scalar must be a string");
        return Rat::parse(j.get<std::string>());
    } else {
        if (j.is_string())
            return QuotElem(Rat::parse(j.get<std::string>()));
        require(j.is_array(), "schema",
                "quotient scalar must be a string or an array of rational strings");
        std::vector<Rat> coeffs;
        for (const auto& c : j) {
            require(c.is_string(), "schema", "quotient scalar entries must be rational strings");
            coeffs.push_back(Rat::parse(c.get<std::string>()));
        }
        return QuotElem(std::move(coeffs), ctx);
    }
}

template <class S>
ojson scalar_to_json(const S& s)
{
    if constexpr (std::is_same_v<S, Rat>) {
        return ojson(s.str());
    } else {
        ojson arr = ojson::array();
        for (const Rat& c : s.coeffs())
            arr.push_back(c.str());
        return arr;
    }
}

template <class S>
LaurentPoly<S> laurent_from_json(const ojson& j, const std::shared_ptr<const QuotCtx>& ctx)
{
    require(j.is_object(), "schema", "Laurent polynomial must be a degree->coefficient object");
    LaurentPoly<S> f;
    for (const auto& [key, val] : j.items())
        f.add_term(parse_int_key(key), scalar_from_json<S>(val, ctx));
    return f;
}

template <class S>
ojson laurent_to_json(const LaurentPoly<S>& f)
{
    ojson j = ojson::object();
    for (const auto& [d, c] : f.terms()) // ascending degrees
        j[std::to_string(d)] = scalar_to_json<S>(c);
    return j;
}

template <class S>
MatrixK<S> matrix_from_json(const ojson& j, const std::shared_ptr<const QuotCtx>& ctx)
{
    require(j.is_array() && !j.empty(), "schema", "matrix must be a non-empty array of rows");
    const int rows = static_cast<int>(j.size());
    require(j[0].is_array() && !j[0].empty(), "schema", "matrix rows must be non-empty arrays");
    const int cols = static_cast<int>(j[0].size());
    MatrixK<S> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        require(j[i].is_array() && static_cast<int>(j[i].size()) == cols, "schema",
                "ragged matrix");
        for (int c = 0; c < cols; ++c)
            m(i, c) = laurent_from_json<S>(j[i][c], ctx);
    }
    return m;
}

template <class S>
MatrixK<S> constant_matrix_from_json(const ojson& j, const std::shared_ptr<const QuotCtx>& ctx)
{
    require(j.is_array() && !j.empty(), "schema", "matrix must be a non-empty array of rows");
    const int rows = static_cast<int>(j.size());
    require(j[0].is_array() && !j[0].empty(), "schema", "matrix rows must be non-empty arrays");
    const int cols = static_cast<int>(j[0].size());
    MatrixK<S> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        require(j[i].is_array() && static_cast<int>(j[i].size()) == cols, "schema",
                "ragged matrix");
        for (int c = 0; c < cols; ++c)
            m(i, c) = LaurentPoly<S>(scalar_from_json<S>(j[i][c], ctx));
    }
    return m;
}

template <class S>
ojson matrix_to_json(const MatrixK<S>& m)
{
    ojson rows = ojson::array();
    for (int i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(laurent_to_json<S>(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class S>
ojson constant_matrix_to_json(const MatrixK<S>& m)
{
    ojson rows = ojson::array();
    for (int i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(scalar_to_json<S>(m(i, j).coeff(0)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Block maps use 1-based "i,j" keys.
inline BlockKey block_key_from_string(const std::string& s)
{
    const auto comma = s.find(',');
    require(comma != std::string::npos, "schema", "block key must look like \"i,j\"");
    const int i = parse_int_key(s.substr(0, comma));
    const int j = parse_int_key(s.substr(comma + 1));
    require(1 <= i && i < j, "schema", "block key needs 1 <= i < j, got '" + s + "'");
    return {i - 1, j - 1};
}

inline std::string block_key_to_string(const BlockKey& k)
{
    return std::to_string(k.first + 1) + "," + std::to_string(k.second + 1);
}

template <class S>
std::map<BlockKey, MatrixK<S>> block_map_from_json(const ojson& j,
                                                   const std::shared_ptr<const QuotCtx>& ctx)
{
    require(j.is_object(), "schema", "block map must be an object keyed by \"i,j\"");
    std::map<BlockKey, MatrixK<S>> out;
    for (const auto& [key, val] : j.items()) {
        const BlockKey bk = block_key_from_string(key);
        require(!out.count(bk), "schema", "duplicate block key '" + key + "'");
        out.emplace(bk, matrix_from_json<S>(val, ctx));
    }
    return out;
}

template <class S>
ojson block_map_to_json(const std::map<BlockKey, MatrixK<S>>& blocks)
{
    ojson j = ojson::object();
    for (const auto& [key, m] : blocks)
        j[block_key_to_string(key)] = matrix_to_json<S>(m);
    return j;
}

} // namespace io

/// In-memory problem document. Slope monotonicity and block shapes are
/// enforced when a spec or presentation is demanded, so commands that work
/// on bare module pairs (hom) can accept any slopes.
template <class S>
struct Document {
    using value_type = S;

    DilationQ q;
    CoeffRing ring;
    std::vector<PureModule<S>> graded;
    std::map<BlockKey, MatrixK<S>> blocks;
    bool has_blocks = false;
    std::map<BlockKey, MatrixK<S>> gauge_blocks;
    bool has_gauge = false;

    GradedSpec<S> spec() const { return GradedSpec<S>(q, ring, graded); }

    FilteredPresentation<S> presentation() const
    {
        return FilteredPresentation<S>(spec(), blocks);
    }

    UnipotentGauge<S> gauge() const
    {
        require(has_gauge, "schema", "document has no gauge");
        return UnipotentGauge<S>(spec(), gauge_blocks);
    }
};

using AnyDocument = std::variant<Document<Rat>, Document<QuotElem>>;

namespace io {

template <class S>
Document<S> document_from_json(const ojson& j, DilationQ q, CoeffRing ring)
{
    std::shared_ptr<const QuotCtx> ctx;
    if (!ring.is_rationals())
        ctx = make_ctx(ring);

    const ojson& graded = member(j, "graded");
    require(graded.is_array() && !graded.empty(), "schema",
            "graded must be a non-empty array");
    std::vector<PureModule<S>> pures;
    for (const auto& g : graded) {
        require(g.is_object(), "schema", "graded entries must be objects");
        const ojson& rank_j = member(g, "rank");
        const ojson& slope_j = member(g, "slope");
        require(rank_j.is_number_integer() && slope_j.is_number_integer(), "schema",
                "rank and slope must be integers");
        const int rank = rank_j.get<int>();
        const int slope = slope_j.get<int>();
        require(rank >= 1, "schema", "rank must be positive");
        MatrixK<S> a0 = constant_matrix_from_json<S>(member(g, "A0"), ctx);
        require(a0.rows() == rank && a0.cols() == rank, "schema",
                "A0 must be rank x rank");
        pures.emplace_back(q, ring, slope, std::move(a0));
    }

    Document<S> doc{std::move(q), std::move(ring), std::move(pures), {}, false, {}, false};
    for (const char* key : {"blocks", "gauge"}) {
        auto it = j.find(key);
        if (it == j.end())
            continue;
        auto parsed = block_map_from_json<S>(*it, ctx);
        for (const auto& [bk, m] : parsed) {
            require(bk.second < static_cast<int>(doc.graded.size()), "schema",
                    std::string(key) + " key out of range: " + block_key_to_string(bk));
            require(m.rows() == doc.graded[bk.first].rank() &&
                        m.cols() == doc.graded[bk.second].rank(),
                    "schema",
                    std::string(key) + " " + block_key_to_string(bk) +
                        " must be rank_i x rank_j");
        }
        if (std::string(key) == "blocks") {
            doc.blocks = std::move(parsed);
            doc.has_blocks = true;
        } else {
            doc.gauge_blocks = std::move(parsed);
            doc.has_gauge = true;
        }
    }
    return doc;
}

} // namespace io

inline AnyDocument parse_document(const ojson& j)
{
    require(j.is_object(), "schema", "document must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        (void)val;
        require(key == "q" || key == "coeff_ring" || key == "graded" || key == "blocks" ||
                    key == "gauge" || key == "verified",
                "schema", "unknown document key '" + key + "'");
    }
    DilationQ q(Rat::parse(io::string_member(j, "q")));
    CoeffRing ring = io::ring_from_json(io::member(j, "coeff_ring"));
    if (ring.is_rationals())
        return io::document_from_json<Rat>(j, std::move(q), std::move(ring));
    return io::document_from_json<QuotElem>(j, std::move(q), std::move(ring));
}

inline AnyDocument parse_document_text(const std::string& text)
{
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail("parse", e.what());
    }
    return parse_document(j);
}

template <class S>
ojson document_to_json(const Document<S>& doc)
{
    ojson j;
    j["q"] = doc.q.value().str();
    j["coeff_ring"] = io::ring_to_json(doc.ring);
    ojson graded = ojson::array();
    for (const auto& p : doc.graded) {
        ojson g;
        g["rank"] = p.rank();
        g["slope"] = p.slope();
        g["A0"] = io::constant_matrix_to_json<S>(p.leading());
        graded.push_back(std::move(g));
    }
    j["graded"] = std::move(graded);

    // blocks are always written out in full (zero blocks explicit)
    std::map<BlockKey, MatrixK<S>> full;
    for (int i = 0; i < static_cast<int>(doc.graded.size()); ++i)
        for (int jj = i + 1; jj < static_cast<int>(doc.graded.size()); ++jj) {
            auto it = doc.blocks.find({i, jj});
            full.emplace(BlockKey{i, jj},
                         it != doc.blocks.end()
                             ? it->second
                             : MatrixK<S>::zero(doc.graded[i].rank(), doc.graded[jj].rank()));
        }
    j["blocks"] = io::block_map_to_json<S>(full);
    if (doc.has_gauge)
        j["gauge"] = io::block_map_to_json<S>(doc.gauge_blocks);
    return j;
}

template <class S>
Document<S> document_from_presentation(const FilteredPresentation<S>& p)
{
    Document<S> doc{p.spec().q(), p.spec().ring(), p.spec().blocks(), p.blocks(), true, {}, false};
    return doc;
}

} // namespace isograd

#endif
