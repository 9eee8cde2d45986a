#include "vdpost/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vdpost/format.hpp"

namespace vdpost {

std::vector<Pixel> GroundTruthObject::pixels() const {
    std::vector<Pixel> out;
    out.reserve(area());
    for (int r = min_row; r < min_row + height; ++r) {
        for (int c = min_col; c < min_col + width; ++c) {
            out.push_back({r, c});
        }
    }
    return out;
}

OverlapMatrix overlap_matrix(std::span<const GroundTruthObject> gt, const FrameDetections& det) {
    OverlapMatrix ovlp(gt.size(), det.objects.size());
    for (std::size_t i = 0; i < gt.size(); ++i) {
        const auto& g = gt[i];
        const BoundingBox gbox{g.min_row, g.min_col, g.min_row + g.height - 1, g.min_col + g.width - 1};
        for (std::size_t j = 0; j < det.objects.size(); ++j) {
            const auto& a = det.objects[j];
            if (!gbox.intersects(a.bbox())) {
                continue;
            }
            const auto inter = static_cast<std::size_t>(
                std::count_if(a.pixels().begin(), a.pixels().end(), [&](const Pixel& p) { return g.contains(p); }));
            if (inter == 0) {
                continue;
            }
            const auto uni = g.area() + a.area() - inter;
            ovlp(i, j) = static_cast<double>(inter) / static_cast<double>(uni);
        }
    }
    return ovlp;
}

DetectionTally classify_detections(const OverlapMatrix& ovlp, double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw ParameterError("overlap threshold lambda must lie in [0, 1)");
    }
    const std::size_t n_gt = ovlp.rows();
    const std::size_t n_det = ovlp.cols();

    struct Entry {
        double value;
        std::size_t gt;
        std::size_t det;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < n_gt; ++i) {
        for (std::size_t j = 0; j < n_det; ++j) {
            if (ovlp(i, j) > 0.0) {
                entries.push_back({ovlp(i, j), i, j});
            }
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) {
            return a.value > b.value;
        }
        return a.gt != b.gt ? a.gt < b.gt : a.det < b.det;
    });

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_of_gt(n_gt, kNone);
    std::vector<std::size_t> match_of_det(n_det, kNone);
    for (const auto& e : entries) {
        if (match_of_gt[e.gt] == kNone && match_of_det[e.det] == kNone) {
            match_of_gt[e.gt] = e.det;
            match_of_det[e.det] = e.gt;
        }
    }

    DetectionTally t;
    // tp_gt_of_det[j]: the GT for which detection j is the TP
    std::vector<std::size_t> tp_gt_of_det(n_det, kNone);
    for (std::size_t i = 0; i < n_gt; ++i) {
        const std::size_t j = match_of_gt[i];
        if (j != kNone && ovlp(i, j) > lambda) {
            ++t.tp;
            tp_gt_of_det[j] = i;
        } else {
            ++t.fn;
        }
    }

    for (std::size_t i = 0; i < n_gt; ++i) {
        for (std::size_t j = 0; j < n_det; ++j) {
            if (!(ovlp(i, j) > 0.0) || j == match_of_gt[i]) {
                continue;
            }
            if (tp_gt_of_det[j] == kNone) {
                ++t.s;
            } else {
                ++t.m;
            }
        }
    }

    for (std::size_t j = 0; j < n_det; ++j) {
        bool touches = false;
        for (std::size_t i = 0; i < n_gt && !touches; ++i) {
            touches = ovlp(i, j) > 0.0;
        }
        if (!touches) {
            ++t.fp;
        }
    }
    return t;
}

std::optional<double> pwc(const DetectionTally& t) {
    const long denom = t.tp + t.fn + t.fp + DetectionTally::tn;
    if (denom <= 0) {
        return std::nullopt;
    }
    return 100.0 * static_cast<double>(t.fp + t.fn) / static_cast<double>(denom);
}

std::optional<double> precision(const DetectionTally& t) {
    if (t.tp + t.fp <= 0) {
        return std::nullopt;
    }
    return static_cast<double>(t.tp) / static_cast<double>(t.tp + t.fp);
}

std::optional<double> recall(const DetectionTally& t) {
    if (t.tp + t.fn <= 0) {
        return std::nullopt;
    }
    return static_cast<double>(t.tp) / static_cast<double>(t.tp + t.fn);
}

std::optional<double> f_beta(const DetectionTally& t, double beta2) {
    if (!(beta2 >= 0.0) || !std::isfinite(beta2)) {
        throw ParameterError("beta^2 must be a non-negative number");
    }
    const double tp = static_cast<double>(t.tp);
    const double denom = (1.0 + beta2) * tp + beta2 * static_cast<double>(t.fn) + static_cast<double>(t.fp);
    if (!(denom > 0.0)) {
        return std::nullopt;
    }
    return (1.0 + beta2) * tp / denom;
}

FrameStatistic frame_statistics(std::span<const std::optional<double>> per_frame) {
    std::vector<double> values;
    for (const auto& v : per_frame) {
        if (v) {
            values.push_back(*v);
        }
    }
    FrameStatistic st;
    st.n = values.size();
    if (values.empty()) {
        return st;
    }
    // shifted by the first value so a constant series has exactly zero spread
    const double k = values.front();
    double sum = 0.0;
    for (double v : values) {
        sum += v - k;
    }
    const double n = static_cast<double>(values.size());
    const double shift = sum / n;
    st.mean = k + shift;
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - k - shift) * (v - k - shift);
        }
        const double sd = std::sqrt(ss / (n - 1.0));
        st.ci95 = 1.96 * sd / std::sqrt(n);
    }
    return st;
}

MetricValues metric_values(const DetectionTally& t, double beta2) {
    return {precision(t), recall(t), f1(t), f_beta(t, beta2), pwc(t)};
}

MetricsReport build_report(std::vector<FrameResult> frames, double beta2) {
    MetricsReport rep;
    rep.beta2 = beta2;
    rep.frames = std::move(frames);
    for (auto& f : rep.frames) {
        f.values = metric_values(f.tally, beta2);
        rep.pooled += f.tally;
    }
    rep.aggregate = metric_values(rep.pooled, beta2);

    auto column = [&](auto&& get) {
        std::vector<std::optional<double>> v;
        v.reserve(rep.frames.size());
        for (const auto& f : rep.frames) {
            v.push_back(get(f));
        }
        return frame_statistics(v);
    };
    auto& s = rep.per_frame;
    s.tp = column([](const FrameResult& f) { return std::optional<double>(f.tally.tp); });
    s.s = column([](const FrameResult& f) { return std::optional<double>(f.tally.s); });
    s.m = column([](const FrameResult& f) { return std::optional<double>(f.tally.m); });
    s.fn = column([](const FrameResult& f) { return std::optional<double>(f.tally.fn); });
    s.fp = column([](const FrameResult& f) { return std::optional<double>(f.tally.fp); });
    s.precision = column([](const FrameResult& f) { return f.values.precision; });
    s.recall = column([](const FrameResult& f) { return f.values.recall; });
    s.f1 = column([](const FrameResult& f) { return f.values.f1; });
    s.f_beta = column([](const FrameResult& f) { return f.values.f_beta; });
    s.pwc = column([](const FrameResult& f) { return f.values.pwc; });
    return rep;
}

namespace {

void write_values(std::ostream& out, const MetricValues& v) {
    out << ',' << format_real(v.precision) << ',' << format_real(v.recall) << ',' << format_real(v.f1) << ','
        << format_real(v.f_beta) << ',' << format_real(v.pwc) << '\n';
}

}  // namespace

void write_report(std::ostream& out, const MetricsReport& report) {
    out << "frame,tp,s,m,fn,fp,precision,recall,f1,f_beta,pwc\n";
    for (const auto& f : report.frames) {
        const auto& t = f.tally;
        out << f.frame_index << ',' << t.tp << ',' << t.s << ',' << t.m << ',' << t.fn << ',' << t.fp;
        write_values(out, f.values);
    }
    const auto& p = report.pooled;
    out << "aggregate," << p.tp << ',' << p.s << ',' << p.m << ',' << p.fn << ',' << p.fp;
    write_values(out, report.aggregate);

    const auto& s = report.per_frame;
    const FrameStatistic* cols[] = {&s.tp, &s.s, &s.m, &s.fn, &s.fp, &s.precision, &s.recall, &s.f1, &s.f_beta, &s.pwc};
    out << "mean";
    for (const auto* c : cols) {
        out << ',' << format_real(c->mean);
    }
    out << "\nci95";
    for (const auto* c : cols) {
        out << ',' << format_real(c->ci95);
    }
    out << '\n';
}

std::vector<GroundTruthObject> read_ground_truth(const std::filesystem::path& path, int frame_index) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(IoErrorKind::Unreadable, "cannot open ground truth " + path.string());
    }
    std::vector<GroundTruthObject> gt;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        GroundTruthObject g{frame_index, 0, 0, 0, 0};
        std::string rest;
        if (!(fields >> g.min_row >> g.min_col >> g.height >> g.width) || (fields >> rest) || g.height < 1 ||
            g.width < 1 || g.min_row < 0 || g.min_col < 0) {
            throw IoError(IoErrorKind::MalformedHeader,
                          path.string() + ":" + std::to_string(line_no) + ": expected min_row,min_col,height,width");
        }
        gt.push_back(g);
    }
    return gt;
}

void write_ground_truth(std::ostream& out, std::span<const GroundTruthObject> gt) {
    for (const auto& g : gt) {
        out << g.min_row << ',' << g.min_col << ',' << g.height << ',' << g.width << '\n';
    }
}

void check_ground_truth(std::span<const GroundTruthObject> gt, int width, int height) {
    for (const auto& g : gt) {
        if (g.min_row < 0 || g.min_col < 0 || g.min_row + g.height > height || g.min_col + g.width > width) {
            throw DataError("ground-truth rectangle of frame " + std::to_string(g.frame_index) +
                            " lies outside the frame");
        }
    }
}

}  // namespace vdpost
