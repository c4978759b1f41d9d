#include "alg/document.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "alg/expr.hpp"

namespace alg {

DocumentError::DocumentError(std::string file_, std::size_t line_, std::size_t column_, const std::string& msg)
    : std::runtime_error(file_ + ":" + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
      file(std::move(file_)),
      line(line_),
      column(column_) {}

namespace {

struct Field {
    std::string text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::string text;    // comment stripped, untrimmed
};

std::size_t first_nonblank(const std::string& s, std::size_t from = 0) {
    std::size_t k = from;
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
    return k;
}

Field trimmed(const std::string& s, std::size_t begin, std::size_t end) {
    std::size_t b = first_nonblank(s, begin);
    std::size_t e = end;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return {s.substr(b, e - b), b + 1};
}

std::vector<Field> split_commas(const std::string& s, std::size_t begin, std::size_t end) {
    std::vector<Field> out;
    int depth = 0;
    std::size_t start = begin;
    for (std::size_t k = begin; k < end; ++k) {
        if (s[k] == '(') ++depth;
        if (s[k] == ')') --depth;
        if (s[k] == ',' && depth == 0) {
            out.push_back(trimmed(s, start, k));
            start = k + 1;
        }
    }
    Field last = trimmed(s, start, end);
    if (!last.text.empty() || !out.empty()) out.push_back(last);
    return out;
}

class Parser {
public:
    Parser(std::string file, const std::string& text) : file_(std::move(file)) {
        std::istringstream in(text);
        std::string raw;
        std::size_t n = 0;
        std::string section;
        while (std::getline(in, raw)) {
            ++n;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            Field f = trimmed(raw, 0, raw.size());
            if (f.text.empty()) continue;
            if (f.text.front() == '[') {
                if (f.text.back() != ']') error(n, f.column, "unterminated section header");
                section = f.text.substr(1, f.text.size() - 2);
                if (sections_.count(section)) error(n, f.column, "duplicate section [" + section + "]");
                sections_[section];
                section_line_[section] = n;
                continue;
            }
            sections_[section].push_back({n, raw});
        }
    }

    [[noreturn]] void error(std::size_t line, std::size_t column, const std::string& msg) const {
        throw DocumentError(file_, line, column, msg);
    }

    bool has(const std::string& section) const { return sections_.count(section) > 0; }
    const std::vector<Line>& lines(const std::string& section) const {
        static const std::vector<Line> none;
        auto it = sections_.find(section);
        return it == sections_.end() ? none : it->second;
    }
    std::size_t header_line(const std::string& section) const {
        auto it = section_line_.find(section);
        return it == section_line_.end() ? 0 : it->second;
    }

    void check_sections(const std::vector<std::string>& allowed) const {
        for (const auto& [name, ls] : sections_) {
            if (name.empty()) continue;
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
                error(header_line(name), 1, "unknown section [" + name + "]");
        }
    }

    /// key = value pairs of a section, rejecting unknown keys.
    std::map<std::string, std::pair<Field, std::size_t>> keys(const std::string& section,
                                                              const std::vector<std::string>& allowed) const {
        std::map<std::string, std::pair<Field, std::size_t>> out;
        for (const Line& l : lines(section)) {
            auto eq = l.text.find('=');
            Field k = trimmed(l.text, 0, eq == std::string::npos ? l.text.size() : eq);
            if (eq == std::string::npos) error(l.number, k.column, "expected key = value");
            if (std::find(allowed.begin(), allowed.end(), k.text) == allowed.end())
                error(l.number, k.column, "unknown key '" + k.text + "'");
            if (out.count(k.text)) error(l.number, k.column, "duplicate key '" + k.text + "'");
            out[k.text] = {trimmed(l.text, eq + 1, l.text.size()), l.number};
        }
        return out;
    }

    Scalar scalar(const Field& f, std::size_t line, const std::vector<std::string>& coords) const {
        if (f.text.empty()) error(line, f.column, "empty expression");
        try {
            return parse_scalar(f.text, coords);
        } catch (const ParseError& e) {
            error(line, f.column + e.position, e.what());
        } catch (const DivisionByZero& e) {
            error(line, f.column, e.what());
        }
    }

    Matrix matrix(const std::string& section, std::size_t rows, std::size_t cols,
                  const std::vector<std::string>& coords) const {
        const auto& ls = lines(section);
        if (ls.size() != rows)
            error(ls.empty() ? header_line(section) : ls.back().number, 1,
                  "[" + section + "] needs " + std::to_string(rows) + " rows, found " + std::to_string(ls.size()));
        Matrix M(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            auto fields = split_commas(ls[i].text, 0, ls[i].text.size());
            if (fields.size() != cols)
                error(ls[i].number, 1,
                      "row needs " + std::to_string(cols) + " entries, found " + std::to_string(fields.size()));
            for (std::size_t j = 0; j < cols; ++j) M(i, j) = scalar(fields[j], ls[i].number, coords);
        }
        return M;
    }

    std::size_t integer(const Field& f, std::size_t line) const {
        try {
            std::size_t used = 0;
            long v = std::stol(f.text, &used);
            if (used != f.text.size() || v < 0) throw std::invalid_argument("");
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            error(line, f.column, "expected a nonnegative integer, found '" + f.text + "'");
        }
    }

    const std::string& file() const { return file_; }

private:
    std::string file_;
    std::map<std::string, std::vector<Line>> sections_;
    std::map<std::string, std::size_t> section_line_;
};

std::vector<std::string> coord_list(const Parser& p, const Field& f, std::size_t line) {
    std::vector<std::string> out;
    for (const Field& c : split_commas(f.text, 0, f.text.size())) {
        if (!is_identifier(c.text) || c.text == "i")
            p.error(line, f.column + c.column - 1, "invalid coordinate name '" + c.text + "'");
        if (std::find(out.begin(), out.end(), c.text) != out.end())
            p.error(line, f.column + c.column - 1, "duplicate coordinate '" + c.text + "'");
        out.push_back(c.text);
    }
    return out;
}

std::string row_str(const Matrix& M, std::size_t i) {
    std::string out;
    for (std::size_t j = 0; j < M.cols(); ++j) out += (j ? ", " : "") + M(i, j).str();
    return out;
}

void emit_matrix(std::ostringstream& os, const std::string& section, const Matrix& M) {
    os << "\n[" << section << "]\n";
    for (std::size_t i = 0; i < M.rows(); ++i) os << row_str(M, i) << "\n";
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k];
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError(path.string(), 0, 0, "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

Geometry parse_document(const std::string& text, const std::string& file) {
    Parser p(file, text);
    p.check_sections({"chart", "anchor", "bracket", "J", "metric"});
    auto top = p.keys("", {"name", "import"});

    Geometry G;
    std::optional<Geometry> base;
    if (top.count("import")) {
        const auto& [f, line] = top.at("import");
        try {
            base = fixture(f.text);
        } catch (const std::invalid_argument& e) {
            p.error(line, f.column, e.what());
        }
    }
    G.name = top.count("name") ? top.at("name").first.text : base ? base->name : "document";

    std::shared_ptr<const Chart> chart;
    std::size_t rank = 0;
    if (p.has("chart")) {
        auto ck = p.keys("chart", {"name", "coords", "rank"});
        if (!ck.count("rank")) p.error(p.header_line("chart"), 1, "[chart] needs rank");
        rank = p.integer(ck.at("rank").first, ck.at("rank").second);
        std::vector<std::string> coords;
        if (ck.count("coords")) coords = coord_list(p, ck.at("coords").first, ck.at("coords").second);
        chart = std::make_shared<const Chart>(ck.count("name") ? ck.at("name").first.text : G.name, coords);
    } else if (base) {
        chart = base->A->chart_ptr();
        rank = base->A->rank();
    } else {
        p.error(1, 1, "document needs a [chart] section or an import");
    }
    const auto& coords = chart->coords();
    const bool same_shape = base && base->A->rank() == rank && base->A->chart().coords() == coords;

    Matrix anchor(rank, coords.size());
    if (p.has("anchor") && !p.lines("anchor").empty())
        anchor = p.matrix("anchor", rank, coords.size(), coords);
    else if (!p.has("anchor") && same_shape)
        anchor = base->A->anchor_matrix();

    Tensor3 C(rank);
    if (p.has("bracket")) {
        Tensor3 upper(rank);
        for (const Line& l : p.lines("bracket")) {
            auto eq = l.text.find('=');
            if (eq == std::string::npos) p.error(l.number, 1, "expected 'a b c = expression'");
            std::istringstream idx(l.text.substr(0, eq));
            std::vector<long> abc;
            std::string tok;
            while (idx >> tok) {
                try {
                    std::size_t used = 0;
                    abc.push_back(std::stol(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    p.error(l.number, first_nonblank(l.text) + 1, "bracket indices must be integers");
                }
            }
            if (abc.size() != 3) p.error(l.number, first_nonblank(l.text) + 1, "expected three indices a b c");
            for (long v : abc)
                if (v < 1 || static_cast<std::size_t>(v) > rank)
                    p.error(l.number, first_nonblank(l.text) + 1, "index " + std::to_string(v) + " out of range 1.." + std::to_string(rank));
            if (abc[0] >= abc[1]) p.error(l.number, first_nonblank(l.text) + 1, "bracket entries need a < b");
            Field f = trimmed(l.text, eq + 1, l.text.size());
            upper(abc[2] - 1, abc[0] - 1, abc[1] - 1) = p.scalar(f, l.number, coords);
        }
        C = Algebroid::antisymmetrize(upper);
    } else if (same_shape) {
        C = base->A->structure();
    }

    std::vector<std::string> labels;
    if (same_shape && !p.has("anchor") && !p.has("bracket")) labels = base->A->labels();
    G.A = Algebroid::make(G.name, chart, anchor, C, labels);
    if (p.has("J"))
        G.J = p.matrix("J", rank, rank, coords);
    else if (same_shape)
        G.J = base->J;
    if (p.has("metric"))
        G.g = p.matrix("metric", rank, rank, coords);
    else if (same_shape)
        G.g = base->g;
    return G;
}

Geometry load_document(const std::filesystem::path& path) { return parse_document(read_file(path), path.string()); }

std::string emit_document(const Geometry& G) {
    const Algebroid& A = *G.A;
    std::ostringstream os;
    os << "name = " << G.name << "\n\n[chart]\nname = " << A.chart().name() << "\ncoords = " << join(A.chart().coords())
       << "\nrank = " << A.rank() << "\n";
    if (A.dim() > 0) emit_matrix(os, "anchor", A.anchor_matrix());
    os << "\n[bracket]\n";
    for (std::size_t a = 0; a < A.rank(); ++a)
        for (std::size_t b = a + 1; b < A.rank(); ++b)
            for (std::size_t c = 0; c < A.rank(); ++c)
                if (!A.C(c, a, b).is_zero()) os << a + 1 << " " << b + 1 << " " << c + 1 << " = " << A.C(c, a, b).str() << "\n";
    if (G.J) emit_matrix(os, "J", *G.J);
    if (G.g) emit_matrix(os, "metric", *G.g);
    return os.str();
}

ProjectorRestriction parse_projector(const std::string& text, const std::string& file) {
    Parser p(file, text);
    p.check_sections({"chart", "projector", "ambient_anchor", "J", "metric"});
    auto top = p.keys("", {"name"});
    const std::string name = top.count("name") ? top.at("name").first.text : "restriction";
    if (!p.has("chart")) p.error(1, 1, "projector file needs a [chart] section");
    auto ck = p.keys("chart", {"name", "coords"});
    std::vector<std::string> coords;
    if (ck.count("coords")) coords = coord_list(p, ck.at("coords").first, ck.at("coords").second);
    auto chart = std::make_shared<const Chart>(ck.count("name") ? ck.at("name").first.text : name, coords);
    if (!p.has("projector")) p.error(1, 1, "projector file needs a [projector] section");
    const std::size_t r = p.lines("projector").size();
    Matrix Pi = p.matrix("projector", r, r, coords);
    if (!p.has("ambient_anchor")) p.error(1, 1, "projector file needs an [ambient_anchor] section");
    Matrix anchor = p.matrix("ambient_anchor", r, coords.size(), coords);
    std::optional<Matrix> J, g;
    if (p.has("J")) J = p.matrix("J", r, r, coords);
    if (p.has("metric")) g = p.matrix("metric", r, r, coords);
    return projector_restriction(name, chart, Pi, anchor, J, g);
}

ProjectorRestriction load_projector(const std::filesystem::path& path) {
    return parse_projector(read_file(path), path.string());
}

std::string emit_projector(const ProjectorRestriction& R) {
    const Algebroid& A = *R.geometry.A;
    std::ostringstream os;
    os << "name = " << R.geometry.name << "\n\n[chart]\nname = " << A.chart().name()
       << "\ncoords = " << join(A.chart().coords()) << "\n";
    emit_matrix(os, "projector", R.Pi);
    emit_matrix(os, "ambient_anchor", R.ambient_anchor);
    if (R.ambient_J) emit_matrix(os, "J", *R.ambient_J);
    if (R.geometry.g) emit_matrix(os, "metric", *R.geometry.g);
    return os.str();
}

bool structurally_equal(const Geometry& a, const Geometry& b) {
    const Algebroid& A = *a.A;
    const Algebroid& B = *b.A;
    if (A.chart().coords() != B.chart().coords() || A.rank() != B.rank()) return false;
    if (!(A.anchor_matrix() == B.anchor_matrix()) || !(A.structure() == B.structure())) return false;
    if (a.J.has_value() != b.J.has_value() || (a.J && !(*a.J == *b.J))) return false;
    if (a.g.has_value() != b.g.has_value() || (a.g && !(*a.g == *b.g))) return false;
    return true;
}

Geometry resolve_target(const std::string& target) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(target, ec)) return load_document(target);
    return fixture(target);
}

}  // namespace alg
