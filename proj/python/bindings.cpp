#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "vdpost/io.hpp"
#include "vdpost/metrics.hpp"
#include "vdpost/morphology.hpp"
#include "vdpost/objects.hpp"
#include "vdpost/pipeline.hpp"
#include "vdpost/synth.hpp"
#include "vdpost/temporal.hpp"
#include "vdpost/threshold.hpp"

namespace py = pybind11;
using namespace vdpost;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using MaskArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

void require_2d(const py::buffer_info& info) {
    if (info.ndim != 2) {
        throw py::value_error("expected a 2-D array");
    }
}

RawImage to_raw(const DoubleArray& a) {
    const auto info = a.request();
    require_2d(info);
    const auto* p = static_cast<const double*>(info.ptr);
    return RawImage(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]),
                    std::vector<double>(p, p + info.size));
}

SaliencyImage to_saliency(const DoubleArray& a) { return SaliencyImage(to_raw(a)); }

BinaryMask to_mask(const MaskArray& a) {
    const auto info = a.request();
    require_2d(info);
    const auto* p = static_cast<const std::uint8_t*>(info.ptr);
    return BinaryMask(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]),
                      std::vector<std::uint8_t>(p, p + info.size));
}

py::array_t<double> from_image(const SaliencyImage& img) {
    py::array_t<double> out({img.height(), img.width()});
    std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
    return out;
}

py::array_t<bool> from_mask(const BinaryMask& m) {
    py::array_t<bool> out({m.height(), m.width()});
    auto* dst = out.mutable_data();
    for (std::size_t i = 0; i < m.size(); ++i) {
        dst[i] = m.labels()[i] != 0;
    }
    return out;
}

StructuringElement parse_se(const std::string& shape, int size) {
    if (shape == "square") {
        return StructuringElement::square(size);
    }
    if (shape == "disk") {
        return StructuringElement::disk(size);
    }
    throw py::value_error("shape must be 'square' or 'disk'");
}

}  // namespace

PYBIND11_MODULE(_vdpost, m) {
    m.doc() = "Spatio-temporal post-processing of aerial vehicle saliency maps.";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("normalize", [](const DoubleArray& raw) { return from_image(normalize(to_raw(raw))); }, py::arg("raw"));
    m.def("load_frame", [](const std::filesystem::path& p) { return from_image(load_frame(p)); }, py::arg("path"));
    m.def("save_mask", [](const MaskArray& mask, const std::filesystem::path& p) { save_mask(to_mask(mask), p); },
          py::arg("mask"), py::arg("path"));
    m.def("load_mask", [](const std::filesystem::path& p) { return from_mask(load_mask(p)); }, py::arg("path"));

    py::class_<HysteresisConfig>(m, "HysteresisConfig")
        .def(py::init<>())
        .def_readwrite("hi", &HysteresisConfig::hi)
        .def_readwrite("lo", &HysteresisConfig::lo)
        .def_readwrite("nbhd_hi", &HysteresisConfig::nbhd_hi)
        .def_readwrite("nbhd_lo", &HysteresisConfig::nbhd_lo)
        .def_readwrite("sub_mean", &HysteresisConfig::sub_mean);

    m.def(
        "hysteresis_threshold",
        [](const DoubleArray& img, const HysteresisConfig& cfg) {
            return from_mask(hysteresis_threshold(to_saliency(img), cfg));
        },
        py::arg("image"), py::arg("config") = HysteresisConfig{});

    m.def(
        "dilate", [](const MaskArray& a, const std::string& shape, int size) {
            return from_mask(dilate(to_mask(a), parse_se(shape, size)));
        },
        py::arg("mask"), py::arg("shape"), py::arg("size"));
    m.def(
        "erode", [](const MaskArray& a, const std::string& shape, int size) {
            return from_mask(erode(to_mask(a), parse_se(shape, size)));
        },
        py::arg("mask"), py::arg("shape"), py::arg("size"));
    m.def(
        "open", [](const MaskArray& a, const std::string& shape, int size) {
            return from_mask(open(to_mask(a), parse_se(shape, size)));
        },
        py::arg("mask"), py::arg("shape") = "square", py::arg("size") = 2);
    m.def(
        "close", [](const MaskArray& a, const std::string& shape, int size) {
            return from_mask(close(to_mask(a), parse_se(shape, size)));
        },
        py::arg("mask"), py::arg("shape") = "disk", py::arg("size") = 1);

    py::class_<DetectedObject>(m, "DetectedObject")
        .def_property_readonly("id", &DetectedObject::id)
        .def_property_readonly("area", &DetectedObject::area)
        .def_property_readonly("centroid",
                               [](const DetectedObject& o) { return py::make_tuple(o.centroid().row, o.centroid().col); })
        .def_property_readonly("bbox",
                               [](const DetectedObject& o) {
                                   const auto& b = o.bbox();
                                   return py::make_tuple(b.min_row, b.min_col, b.max_row, b.max_col);
                               })
        .def_property_readonly("pixels", [](const DetectedObject& o) {
            py::list out;
            for (const auto& p : o.pixels()) {
                out.append(py::make_tuple(p.row, p.col));
            }
            return out;
        });

    py::class_<FrameDetections>(m, "FrameDetections")
        .def_readonly("frame_index", &FrameDetections::frame_index)
        .def_readonly("width", &FrameDetections::width)
        .def_readonly("height", &FrameDetections::height)
        .def_readonly("objects", &FrameDetections::objects)
        .def("__len__", [](const FrameDetections& f) { return f.objects.size(); });

    m.def(
        "label_components",
        [](const MaskArray& a, int frame_index) { return label_components(to_mask(a), frame_index); },
        py::arg("mask"), py::arg("frame_index") = 0);
    m.def("iou", &iou, py::arg("a"), py::arg("b"));

    py::class_<TemporalConfig>(m, "TemporalConfig")
        .def(py::init<>())
        .def(py::init([](double iou_threshold, double delta) { return TemporalConfig{iou_threshold, delta}; }),
             py::arg("iou_threshold") = 0.75, py::arg("delta") = 2.0)
        .def_readwrite("iou_threshold", &TemporalConfig::iou_threshold)
        .def_readwrite("delta", &TemporalConfig::delta);
    m.def("filter_static", &filter_static, py::arg("sequence"), py::arg("config") = TemporalConfig{});

    py::class_<DetectionTally>(m, "DetectionTally")
        .def(py::init([](long tp, long s, long mm, long fn, long fp) { return DetectionTally{tp, s, mm, fn, fp}; }),
             py::arg("tp") = 0, py::arg("s") = 0, py::arg("m") = 0, py::arg("fn") = 0, py::arg("fp") = 0)
        .def_readwrite("tp", &DetectionTally::tp)
        .def_readwrite("s", &DetectionTally::s)
        .def_readwrite("m", &DetectionTally::m)
        .def_readwrite("fn", &DetectionTally::fn)
        .def_readwrite("fp", &DetectionTally::fp)
        .def("__eq__", [](const DetectionTally& a, const DetectionTally& b) { return a == b; })
        .def("__repr__", [](const DetectionTally& t) {
            return "DetectionTally(tp=" + std::to_string(t.tp) + ", s=" + std::to_string(t.s) +
                   ", m=" + std::to_string(t.m) + ", fn=" + std::to_string(t.fn) + ", fp=" + std::to_string(t.fp) +
                   ")";
        });

    m.def(
        "classify",
        [](const DoubleArray& ovlp, double lambda) {
            const auto info = ovlp.request();
            require_2d(info);
            OverlapMatrix mat(static_cast<std::size_t>(info.shape[0]), static_cast<std::size_t>(info.shape[1]));
            const auto* p = static_cast<const double*>(info.ptr);
            for (std::size_t i = 0; i < mat.rows(); ++i) {
                for (std::size_t j = 0; j < mat.cols(); ++j) {
                    mat(i, j) = p[i * mat.cols() + j];
                }
            }
            return classify_detections(mat, lambda);
        },
        py::arg("overlap"), py::arg("lam"), "Classify detections from a GT x detection overlap matrix.");
    m.def("pwc", &pwc, py::arg("tally"));
    m.def("f_beta", &f_beta, py::arg("tally"), py::arg("beta2") = 0.3);
    m.def("f1", &f1, py::arg("tally"));
    m.def(
        "frame_statistics",
        [](const std::vector<std::optional<double>>& values) {
            const auto st = frame_statistics(values);
            return py::make_tuple(st.mean, st.ci95);
        },
        py::arg("values"));

    m.def(
        "process_sequence",
        [](const std::vector<DoubleArray>& frames, int close_radius, double delta) {
            std::vector<SaliencyImage> imgs;
            for (const auto& f : frames) {
                imgs.push_back(normalize(to_raw(f)));
            }
            PipelineConfig cfg;
            cfg.close_radius = close_radius;
            cfg.temporal.delta = delta;
            auto res = process_sequence(imgs, cfg);
            return py::make_tuple(std::move(res.spatial_detections), std::move(res.temporal_detections));
        },
        py::arg("frames"), py::arg("close_radius") = 1, py::arg("delta") = 2.0,
        "Run the full pipeline; returns (spatial detections, temporal detections) per frame.");

    m.def(
        "render_scene",
        [](const std::string& scene_text) {
            std::istringstream in(scene_text);
            const auto scene = render(parse_scene(in));
            py::list frames;
            for (const auto& f : scene.frames) {
                frames.append(from_image(f));
            }
            py::list gt;
            for (const auto& g : scene.ground_truth) {
                py::list rects;
                for (const auto& r : g) {
                    rects.append(py::make_tuple(r.min_row, r.min_col, r.height, r.width));
                }
                gt.append(rects);
            }
            return py::make_tuple(frames, gt);
        },
        py::arg("scene"), "Render a key=value scene spec; returns (frames, ground-truth rectangles).");
}
