#include "vortsim/output.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "vortsim/errors.hpp"

namespace vortsim {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string mass_label(double mass) { return format_double(mass); }

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) fail("io", "cannot create output directory '" + path + "': " + ec.message());
}

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
    if (!out) fail("io", "cannot open '" + path + "' for writing");
    return out;
}

void close_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) fail("io", "write failed for '" + path + "'");
}

std::string ky_suffix(int transverse_index) {
    return "_ky" + std::to_string(transverse_index);
}

}  // namespace

std::string emit_timeseries_csv(const std::string& directory, const SingleRunResult& run) {
    const std::string path = directory + "/timeseries_M" + mass_label(run.mass0) +
                             ky_suffix(run.transverse_index) + ".csv";
    std::ofstream out = open_output(path);
    out << "t,E_tilde,q_reg,N_total\n";
    for (const auto& rec : run.grid.series)
        out << format_double(rec.t) << ',' << format_double(rec.e_tilde) << ','
            << format_double(rec.q_reg) << ',' << format_double(rec.n_total) << '\n';
    close_output(out, path);
    return path;
}

std::string emit_sweep_csv(const std::string& directory, const SweepResult& sweep,
                           int transverse_index) {
    const std::string path =
        directory + (transverse_index == 0 ? "/sweep.csv"
                                           : "/sweep" + ky_suffix(transverse_index) + ".csv");
    std::ofstream out = open_output(path);
    out << "M0,Q,N_final,dt_used,wronskian_drift\n";
    for (const auto& e : sweep.entries)
        out << format_double(e.mass0) << ',' << format_double(e.transport) << ','
            << format_double(e.n_final) << ',' << format_double(e.dt_used) << ','
            << format_double(e.wronskian_max_drift) << '\n';
    close_output(out, path);
    return path;
}

std::string emit_fit_csv(const std::string& directory, const ExponentialFit& fit,
                         int transverse_index) {
    const std::string path =
        directory + (transverse_index == 0 ? "/fit.csv"
                                           : "/fit" + ky_suffix(transverse_index) + ".csv");
    std::ofstream out = open_output(path);
    out << "amplitude,rate,max_ln_residual\n";
    out << format_double(fit.amplitude) << ',' << format_double(fit.rate) << ','
        << format_double(fit.max_ln_residual) << '\n';
    close_output(out, path);
    return path;
}

std::string emit_permode_csv(const std::string& directory, const SingleRunResult& run) {
    const std::string path = directory + "/permode_M" + mass_label(run.mass0) +
                             ky_suffix(run.transverse_index) + ".csv";
    if (run.grid.series.empty() || run.grid.series.back().per_mode.empty())
        fail("io", "per-mode data was not recorded; enable output.emit_per_mode");
    std::ofstream out = open_output(path);
    out << "k_x,f_sq,n_k\n";
    for (const auto& pm : run.grid.series.back().per_mode)
        out << format_double(pm.kx) << ',' << format_double(pm.f_sq) << ','
            << format_double(pm.occupation) << '\n';
    close_output(out, path);
    return path;
}

std::string emit_fig3_script(const std::string& directory, const SweepResult& sweep,
                             int transverse_index) {
    const std::string path = directory + "/fig3.gnuplot";
    const std::string sweep_csv =
        transverse_index == 0 ? "sweep.csv" : "sweep" + ky_suffix(transverse_index) + ".csv";
    std::ofstream out = open_output(path);
    out << "# gnuplot script: total vortex transport vs M0 with the exponential fit\n"
        << "set datafile separator \",\"\n"
        << "set logscale y\n"
        << "set xlabel \"M_0\"\n"
        << "set ylabel \"|Q|\"\n"
        << "set key top right\n";
    if (sweep.fit) {
        out << "A = " << format_double(sweep.fit->amplitude) << "\n"
            << "r = " << format_double(sweep.fit->rate) << "\n"
            << "plot \"" << sweep_csv
            << "\" every ::1 using 1:(abs($2)) with points pt 7 title \"simulation\", \\\n"
            << "     A*exp(-r*x) with lines title sprintf(\"%.4g exp(-%.4g M_0)\", A, r)\n";
    } else {
        out << "plot \"" << sweep_csv
            << "\" every ::1 using 1:(abs($2)) with points pt 7 title \"simulation\"\n";
    }
    close_output(out, path);
    return path;
}

std::string emit_fig4_script(const std::string& directory, double mass0,
                             int transverse_index) {
    const std::string path = directory + "/fig4.gnuplot";
    const std::string series_csv =
        "timeseries_M" + mass_label(mass0) + ky_suffix(transverse_index) + ".csv";
    std::ofstream out = open_output(path);
    out << "# gnuplot script: total occupation number vs time\n"
        << "set datafile separator \",\"\n"
        << "set xlabel \"t\"\n"
        << "set ylabel \"N\"\n"
        << "plot \"" << series_csv << "\" every ::1 using 1:4 with lines title \"M_0 = "
        << format_double(mass0) << "\"\n";
    close_output(out, path);
    return path;
}

}  // namespace vortsim
