"""Spatio-temporal post-processing of aerial vehicle saliency maps."""

from ._vdpost import (
    DataError,
    DetectedObject,
    DetectionTally,
    DimensionError,
    FrameDetections,
    HysteresisConfig,
    IoError,
    ParameterError,
    TemporalConfig,
    classify,
    close,
    dilate,
    erode,
    f1,
    f_beta,
    filter_static,
    frame_statistics,
    hysteresis_threshold,
    iou,
    label_components,
    load_frame,
    load_mask,
    normalize,
    open,
    process_sequence,
    pwc,
    render_scene,
    save_mask,
)

__all__ = [name for name in dir() if not name.startswith("_")]
