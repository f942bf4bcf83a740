#include "adp/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "adp/rng.hpp"

namespace adp {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        lines.push_back(line);
    }
    if (lines.empty()) {
        throw ValidationError("empty file: " + path);
    }
    return lines;
}

bool all_numeric(const std::vector<std::string>& fields) {
    double ignored;
    for (const auto& f : fields) {
        if (!parse_double(f, ignored)) return false;
    }
    return !fields.empty();
}

}  // namespace

Dataset load_features_csv(const std::string& path) {
    const auto lines = read_lines(path);
    std::size_t first = all_numeric(split_csv_line(lines[0])) ? 0 : 1;
    if (first >= lines.size()) {
        throw ValidationError(path + ": no data rows after header");
    }

    const std::size_t cols = split_csv_line(lines[first]).size();
    Matrix features(static_cast<Index>(lines.size() - first), static_cast<Index>(cols));
    for (std::size_t r = first; r < lines.size(); ++r) {
        const auto fields = split_csv_line(lines[r]);
        if (fields.size() != cols) {
            std::ostringstream msg;
            msg << path << ": row " << r + 1 << " has " << fields.size()
                << " fields, expected " << cols;
            throw ValidationError(msg.str());
        }
        for (std::size_t c = 0; c < cols; ++c) {
            double value;
            if (!parse_double(fields[c], value)) {
                std::ostringstream msg;
                msg << path << ": row " << r + 1 << " field " << c + 1
                    << " is not a number: '" << fields[c] << "'";
                throw ValidationError(msg.str());
            }
            features(static_cast<Index>(r - first), static_cast<Index>(c)) = value;
        }
    }
    Dataset data{std::move(features)};
    validate_dataset(data);
    return data;
}

std::vector<int> load_labels_csv(const std::string& path) {
    const auto lines = read_lines(path);
    std::size_t first = all_numeric(split_csv_line(lines[0])) ? 0 : 1;
    std::vector<int> labels;
    labels.reserve(lines.size() - first);
    for (std::size_t r = first; r < lines.size(); ++r) {
        double value;
        if (!parse_double(lines[r], value) || value != std::floor(value)) {
            std::ostringstream msg;
            msg << path << ": row " << r + 1 << " is not an integer label: '"
                << lines[r] << "'";
            throw ValidationError(msg.str());
        }
        labels.push_back(static_cast<int>(value));
    }
    if (labels.empty()) {
        throw ValidationError(path + ": no labels");
    }
    return labels;
}

void save_matrix_csv(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write file: " + path);
    }
    char buf[32];
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf << (j + 1 < m.cols() ? "," : "");
        }
        out << '\n';
    }
}

void save_labels_csv(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write file: " + path);
    }
    for (int label : labels) {
        out << label << '\n';
    }
}

SynthData make_synthetic(const SynthSpec& spec) {
    if (spec.n < 2) {
        throw ValidationError("synth: need n >= 2");
    }
    if (spec.classes < 1 || static_cast<Index>(spec.classes) > spec.n) {
        throw ValidationError("synth: classes must be in [1, n]");
    }
    if (spec.kind == SynthKind::moons && spec.classes != 2) {
        throw ValidationError("synth: moons requires exactly 2 classes");
    }
    if (spec.noise < 0.0) {
        throw ValidationError("synth: noise must be >= 0");
    }

    NormalSampler normal(spec.seed);
    Matrix features(spec.n, 2);
    std::vector<int> truth(static_cast<std::size_t>(spec.n));

    // Class sizes as even as possible, earlier classes take the remainder.
    std::vector<Index> counts(static_cast<std::size_t>(spec.classes),
                              spec.n / spec.classes);
    for (Index r = 0; r < spec.n % spec.classes; ++r) {
        counts[static_cast<std::size_t>(r)] += 1;
    }

    Index row = 0;
    for (int c = 0; c < spec.classes; ++c) {
        const Index m = counts[static_cast<std::size_t>(c)];
        for (Index i = 0; i < m; ++i, ++row) {
            double x = 0.0, y = 0.0;
            switch (spec.kind) {
                case SynthKind::blobs: {
                    const double angle = 2.0 * M_PI * c / spec.classes;
                    x = 5.0 * std::cos(angle) + spec.noise * normal.next();
                    y = 5.0 * std::sin(angle) + spec.noise * normal.next();
                    break;
                }
                case SynthKind::moons: {
                    const double t = m > 1 ? M_PI * static_cast<double>(i) /
                                                 static_cast<double>(m - 1)
                                           : 0.0;
                    if (c == 0) {
                        x = std::cos(t);
                        y = std::sin(t);
                    } else {
                        x = 1.0 - std::cos(t);
                        y = 0.5 - std::sin(t);
                    }
                    x += spec.noise * normal.next();
                    y += spec.noise * normal.next();
                    break;
                }
                case SynthKind::cliques: {
                    // Separation 100x the spread keeps kNN components disjoint.
                    const double spread = std::max(spec.noise, 1e-3);
                    x = 100.0 * spread * c + spec.noise * normal.next();
                    y = spec.noise * normal.next();
                    break;
                }
            }
            features(row, 0) = x;
            features(row, 1) = y;
            truth[static_cast<std::size_t>(row)] = c;
        }
    }

    return SynthData{Dataset{std::move(features)}, std::move(truth)};
}

}  // namespace adp
