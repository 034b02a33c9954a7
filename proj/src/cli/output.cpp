#include "molent/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "molent/error.hpp"

namespace molent::cli {
namespace {

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    fn(out);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::string strip_csv(const std::string& path) {
    return path.size() > 4 && path.ends_with(".csv") ? path.substr(0, path.size() - 4) : path;
}

struct Figure {
    std::string id;
    std::string title;
    double x_factor;  // seconds to plot units
    std::string x_label;
    std::vector<std::string> columns;
    bool overlay;  // one curve per CSV for the first column
    std::string xrange;
};

const std::vector<Figure>& figures() {
    static const std::vector<Figure> f{
        {"fig3a", "Concurrence C and population rho_ff, initial |e1 g2>", 1e9, "t (ns)", {"C", "rho_ff"}, false, ""},
        {"fig3b", "Zeno effect: survival of |f>", 1e9, "t (ns)", {"survival"}, true, ""},
        {"fig4a", "Concurrence, initial |L1 L2>", 1e9, "t (ns)", {"C"}, false, ""},
        {"fig4b", "Entangled populations, initial |L1 L2>", 1e9, "t (ns)", {"rho_aa", "rho_ss", "rho_pp", "rho_qq"}, false, "[0:0.1]"},
        {"fig5a", "Resonant drive: rho11, rho44 and C", 1e6, "t (us)", {"rho11", "rho44", "C"}, false, ""},
        {"fig5b", "Resonant drive: C for several Omega", 1e6, "t (us)", {"C"}, true, ""},
        {"fig5c", "Resonant drive: C for several J", 1e6, "t (us)", {"C"}, true, ""},
        {"fig5d", "Resonant drive: fast oscillations", 1e9, "t (ns)", {"C", "rho44"}, false, "[0:20]"},
        {"fig6a", "Detuned drive Delta_l = J: rho_ss and C", 1e6, "t (us)", {"rho_ss", "rho_aa", "C"}, false, ""},
        {"fig6b", "Field switched off at the rho_ss maximum", 1e6, "t (us)", {"rho_ss", "re_rho23"}, true, ""},
    };
    return f;
}

std::string quote(const std::string& s) {
    std::string out = "'";
    for (const char c : s) {
        if (c == '\'') out += "''";
        else out += c;
    }
    return out + "'";
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(const ObservableTable& table, std::ostream& out) {
    if (table.rows.empty()) throw InvalidArgument("write_csv: empty table");
    out << "t_s";
    for (const Observable o : table.columns) out << ',' << observable_name(o);
    out << '\n';
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out << format_number(table.times[i]);
        for (const double v : table.rows[i]) out << ',' << format_number(v);
        out << '\n';
    }
}

void write_csv_file(const ObservableTable& table, const std::string& path) {
    with_output(path, [&](std::ostream& o) { write_csv(table, o); });
}

void write_zeno_csv(const std::vector<ZenoRow>& rows, std::ostream& out) {
    out << "t_s,survival,survival_gamma0,exact,gaussian\n";
    for (const auto& r : rows)
        out << format_number(r.t) << ',' << format_number(r.survival) << ',' << format_number(r.survival_gamma0)
            << ',' << format_number(r.exact) << ',' << format_number(r.gaussian) << '\n';
}

void write_zeno_csv_file(const std::vector<ZenoRow>& rows, const std::string& path) {
    with_output(path, [&](std::ostream& o) { write_zeno_csv(rows, o); });
}

void write_maxima_csv(const std::vector<ConcurrenceMaximum>& maxima, const std::string& path) {
    with_output(path, [&](std::ostream& o) {
        o << "t_s,C,pop_p,pop_s,pop_a,pop_q,re_p,im_p,re_s,im_s,re_a,im_a,re_q,im_q\n";
        for (const auto& m : maxima) {
            o << format_number(m.t) << ',' << format_number(m.C);
            for (const double p : m.populations) o << ',' << format_number(p);
            for (const cplx& a : m.amplitudes) o << ',' << format_number(a.real()) << ',' << format_number(a.imag());
            o << '\n';
        }
    });
}

void write_text_file(const std::string& text, const std::string& path) {
    with_output(path, [&](std::ostream& o) { o << text; });
}

std::string sweep_point_path(const std::string& out, std::string_view param, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return strip_csv(out) + "." + std::string(param) + "_" + buf + ".csv";
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& f : figures()) v.push_back(f.id);
        return v;
    }();
    return ids;
}

std::string plot_script(const std::string& figure, const std::vector<std::string>& csv_paths) {
    const Figure* fig = nullptr;
    for (const auto& f : figures())
        if (f.id == figure) fig = &f;
    if (!fig) {
        std::string list;
        for (const auto& id : figure_ids()) list += (list.empty() ? "" : ", ") + id;
        throw InvalidArgument("unknown figure '" + figure + "' (known: " + list + ")");
    }
    if (csv_paths.empty()) throw InvalidArgument("plot: no CSV given");
    for (const auto& p : csv_paths)
        if (!std::filesystem::is_regular_file(p)) throw IoError("missing CSV " + p);

    std::ostringstream s;
    s << "# " << fig->id << ": " << fig->title << "\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output " << quote(fig->id + ".png") << "\n"
      << "set title " << quote(fig->title) << "\n"
      << "set xlabel " << quote(fig->x_label) << "\n";
    if (!fig->xrange.empty()) s << "set xrange " << fig->xrange << "\n";
    char xf[32];
    std::snprintf(xf, sizeof xf, "%.0e", fig->x_factor);
    s << "plot ";
    bool first = true;
    const auto add = [&](const std::string& path, const std::string& column, const std::string& title) {
        s << (first ? "" : ", \\\n     ") << quote(path) << " using ($1*" << xf << "):(column("
          << quote(column) << ")) with lines title " << quote(title);
        first = false;
    };
    if (fig->overlay) {
        for (const auto& p : csv_paths)
            for (const auto& c : fig->columns)
                add(p, c, c + " " + std::filesystem::path(p).stem().string());
    } else {
        for (const auto& c : fig->columns) add(csv_paths.front(), c, c);
    }
    s << "\n";
    return s.str();
}

}  // namespace molent::cli
