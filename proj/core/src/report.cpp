#include <asplag/report.hpp>

#include <cstdio>
#include <fstream>

namespace fs = std::filesystem;

namespace asplag {
namespace {

constexpr const char* style = R"(<style>
body { font-family: sans-serif; margin: 1.5em; color: #222; }
table { border-collapse: collapse; }
th, td { border: 1px solid #ccc; padding: 0.25em 0.6em; vertical-align: top; }
th { background: #eee; cursor: pointer; user-select: none; }
td.num { text-align: right; font-variant-numeric: tabular-nums; }
tr.flagged td { background: #fde8e8; }
code, .rule { font-family: monospace; white-space: pre-wrap; }
.hit { background: #c8f0c8; border-radius: 3px; }
.miss { color: #999; }
.muted { color: #777; }
h2 { margin-top: 1.5em; }
</style>
)";

constexpr const char* index_script = R"(<script>
(function () {
  var table = document.getElementById('pairs');
  var body = table.tBodies[0];
  var rows = Array.prototype.slice.call(body.rows);
  var dir = {};
  Array.prototype.forEach.call(table.tHead.rows[0].cells, function (th, col) {
    th.addEventListener('click', function () {
      dir[col] = !dir[col];
      rows.sort(function (a, b) {
        var x = a.cells[col].getAttribute('data-v'), y = b.cells[col].getAttribute('data-v');
        var nx = parseFloat(x), ny = parseFloat(y), c;
        if (!isNaN(nx) && !isNaN(ny)) c = nx - ny; else c = x < y ? -1 : x > y ? 1 : 0;
        return dir[col] ? c : -c;
      });
      rows.forEach(function (r) { body.appendChild(r); });
    });
  });
  var filter = document.getElementById('filter'), only = document.getElementById('flagged');
  function apply() {
    var q = filter.value.toLowerCase();
    rows.forEach(function (r) {
      var ok = (!q || r.getAttribute('data-ids').indexOf(q) >= 0) && (!only.checked || r.classList.contains('flagged'));
      r.style.display = ok ? '' : 'none';
    });
  }
  filter.addEventListener('input', apply);
  only.addEventListener('change', apply);
})();
</script>
)";

std::string page(const std::string& title, const std::string& body) {
    return "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" + html_escape(title) +
           "</title>\n" + style + "</head>\n<body>\n" + body + "</body>\n</html>\n";
}

std::string cell(const std::optional<Rational>& r) {
    if (!r) return "<td class=\"num\" data-v=\"-1\">&ndash;</td>";
    return "<td class=\"num\" data-v=\"" + r->fixed(6) + "\" title=\"" + r->str() + "\">" + r->fixed(3) + "</td>";
}

std::string text_cell(const std::string& s) { return "<td data-v=\"" + html_escape(s) + "\">" + html_escape(s) + "</td>"; }

const ProgramInfo* program_info(const ResultSet& results, const std::string& id) {
    for (const auto& p : results.programs)
        if (p.id == id) return &p;
    return nullptr;
}

// The rule's literals in head, positive, negative order, matched ones highlighted.
std::string highlighted(const Rule& r, const std::vector<bool>& matched) {
    std::size_t k    = 0;
    auto        lit  = [&](const Literal& l, const char* prefix) {
        bool hit = k < matched.size() && matched[k];
        ++k;
        return std::string("<span class=\"") + (hit ? "hit" : "miss") + "\">" + prefix + html_escape(render_literal(l)) +
               "</span>";
    };
    std::string head;
    for (const auto& l : r.head) head += (head.empty() ? "" : " v ") + lit(l, "");
    std::string body;
    for (const auto& l : r.pos_body) body += (body.empty() ? "" : ", ") + lit(l, "");
    for (const auto& l : r.neg_body) body += (body.empty() ? "" : ", ") + lit(l, "not ");
    if (r.weak) return ":~ " + body + ".";
    if (body.empty()) return head + ".";
    return head + (head.empty() ? ":- " : " :- ") + body + ".";
}

std::string map_text(const RenamingMap& m) {
    auto d = m.describe();
    return d.empty() ? "<span class=\"muted\">identity</span>" : "<code>" + html_escape(d) + "</code>";
}

std::string direction_section(const ResultSet& results, const std::string& from, const std::string& to,
                              const ProgramSimilarity& s, const std::string& technique) {
    const ProgramInfo* a = program_info(results, from);
    const ProgramInfo* b = program_info(results, to);
    std::string out = "<h2>S(" + html_escape(from) + ", " + html_escape(to) + ") = " + s.value.fixed(3) +
                      " <span class=\"muted\">(" + s.value.str() + ", " + html_escape(technique) + ")</span></h2>\n";
    if (s.predicates) {
        out += "<p>Predicate renaming applied to " + html_escape(s.renamed_first ? from : to) + ": " +
               map_text(*s.predicates) + "</p>\n";
    }
    if (s.approximate) out += "<p class=\"muted\">Search budget exhausted; the score is a lower bound.</p>\n";
    out += "<table>\n<thead><tr><th>#</th><th>" + html_escape(from) + "</th><th>&sigma;</th><th>" + html_escape(to) +
           "</th><th>variables</th></tr></thead>\n<tbody>\n";
    for (const auto& m : s.rules) {
        out += "<tr><td class=\"num\">" + std::to_string(m.rule) + "</td><td>";
        if (a && m.rule < a->rules.size()) out += "<div class=\"rule muted\">" + html_escape(a->rules[m.rule]) + "</div>";
        out += "<div class=\"rule\">" + highlighted(m.image, m.matched) + "</div></td>";
        out += "<td class=\"num\" title=\"" + m.score.value().str() + "\">" + m.score.value().fixed(3) + "</td><td>";
        if (m.partner) {
            if (b && *m.partner < b->rules.size())
                out += "<div class=\"rule muted\">" + std::to_string(*m.partner) + ": " + html_escape(b->rules[*m.partner]) +
                       "</div>";
            out += "<div class=\"rule\">" + highlighted(m.partner_image, m.partner_matched) + "</div>";
        } else {
            out += "<span class=\"muted\">no rules</span>";
        }
        out += "</td><td>" + map_text(m.variables) + "</td></tr>\n";
    }
    return out + "</tbody>\n</table>\n";
}

std::optional<Rational> lcs_max(const std::optional<LcsResult>& r) {
    if (!r) return std::nullopt;
    return std::max(r->similarity_ab, r->similarity_ba);
}

} // namespace

std::string html_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&#39;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string pair_page_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "pairs/pair%05zu.html", index);
    return buf;
}

std::string report_index_html(const ResultSet& results) {
    const auto& cfg  = results.config;
    std::string body = "<h1>Similarity report" + (results.corpus.empty() ? "" : ": " + html_escape(results.corpus)) + "</h1>\n";
    body += "<p>" + std::to_string(results.programs.size()) + " programs, " + std::to_string(results.pairs.size()) +
            " pairs. Tests: <code>" + html_escape(cfg.tests.str()) + "</code>. Primary technique: <code>" +
            html_escape(cfg.primary().spec()) + "</code>. Threshold: " + cfg.threshold.fixed(2) + ".</p>\n";
    for (const auto& w : results.warnings) body += "<p class=\"muted\">warning: " + html_escape(w) + "</p>\n";
    body += "<p><input id=\"filter\" placeholder=\"filter by id\"> <label><input type=\"checkbox\" id=\"flagged\"> flagged "
            "only</label></p>\n";
    body += "<table id=\"pairs\">\n<thead><tr><th>#</th><th>program A</th><th>program B</th><th>S(A,B)</th><th>S(B,A)</th>"
            "<th>max</th><th>LCS program</th><th>LCS comments</th><th>fingerprint</th><th>confidence</th></tr></thead>\n"
            "<tbody>\n";
    for (std::size_t i = 0; i < results.pairs.size(); ++i) {
        const auto& p       = results.pairs[i];
        const bool  flagged = !p.structure.empty() && p.score() >= cfg.threshold;
        std::optional<Rational> ab, ba, mx;
        if (!p.structure.empty()) {
            ab = p.structure.front().ab.value;
            ba = p.structure.front().ba.value;
            mx = p.score();
        }
        body += std::string("<tr") + (flagged ? " class=\"flagged\"" : "") + " data-ids=\"" +
                html_escape(p.id_a + " " + p.id_b) + "\">";
        body += "<td class=\"num\" data-v=\"" + std::to_string(i) + "\"><a href=\"" + pair_page_name(i) + "\">" +
                std::to_string(i + 1) + "</a></td>";
        body += text_cell(p.id_a) + text_cell(p.id_b) + cell(ab) + cell(ba) + cell(mx) + cell(lcs_max(p.lcs_program)) +
                cell(lcs_max(p.lcs_comment)) + cell(p.fingerprint) + cell(p.confidence) + "</tr>\n";
    }
    body += "</tbody>\n</table>\n";
    body += index_script;
    return page("Similarity report", body);
}

std::string report_pair_html(const ResultSet& results, std::size_t index) {
    const auto& p    = results.pairs.at(index);
    std::string body = "<p><a href=\"../index.html\">&larr; all pairs</a></p>\n<h1>" + html_escape(p.id_a) + " vs " +
                       html_escape(p.id_b) + "</h1>\n<table>\n";
    auto row = [&](const std::string& name, const std::string& value) {
        body += "<tr><th>" + name + "</th><td>" + value + "</td></tr>\n";
    };
    for (const auto& s : p.structure)
        row("structure " + html_escape(s.technique), s.ab.value.fixed(3) + " / " + s.ba.value.fixed(3));
    if (p.lcs_program)
        row("LCS program", p.lcs_program->similarity_ab.fixed(3) + " / " + p.lcs_program->similarity_ba.fixed(3) +
                               " (common " + std::to_string(p.lcs_program->lcs_length) + ")");
    if (p.lcs_comment)
        row("LCS comments", p.lcs_comment->similarity_ab.fixed(3) + " / " + p.lcs_comment->similarity_ba.fixed(3) +
                                " (common " + std::to_string(p.lcs_comment->lcs_length) + ")");
    if (p.fingerprint) row("fingerprint", p.fingerprint->fixed(3));
    if (p.confidence) row("confidence", p.confidence->fixed(3));
    if (!p.approximate_flags.empty()) {
        std::string flags;
        for (const auto& f : p.approximate_flags) flags += (flags.empty() ? "" : ", ") + html_escape(f);
        row("approximate", flags);
    }
    for (const auto& e : p.errors) row("error", html_escape(e));
    body += "</table>\n";
    if (!p.structure.empty()) {
        const auto& s = p.structure.front();
        body += direction_section(results, p.id_a, p.id_b, s.ab, s.technique);
        body += direction_section(results, p.id_b, p.id_a, s.ba, s.technique);
    }
    return page(p.id_a + " vs " + p.id_b, body);
}

std::vector<fs::path> write_report(const ResultSet& results, const fs::path& dir) {
    if (results.pairs.empty()) throw CorpusError("nothing to report: the results hold no pairs");
    std::error_code ec;
    fs::create_directories(dir / "pairs", ec);
    if (ec) throw CorpusError("cannot create " + (dir / "pairs").string() + ": " + ec.message());
    std::vector<fs::path> written;
    auto write = [&](const fs::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out) throw CorpusError("cannot write " + path.string());
        written.push_back(path);
    };
    write(dir / "index.html", report_index_html(results));
    for (std::size_t i = 0; i < results.pairs.size(); ++i) write(dir / pair_page_name(i), report_pair_html(results, i));
    return written;
}

} // namespace asplag
