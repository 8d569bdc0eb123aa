"""
Graphing service for fringe, visibility and phase-locking plots using Plotly.

Every method returns a standalone HTML string. Plots are an optional extra
next to the CSV/JSON artifacts and are never used for comparisons.
"""

import math
from typing import Optional, Sequence

import plotly.graph_objects as go

from src.enums import ScanParameter
from src.models.dynamics import Trajectory
from src.models.results import ScanResult, VisibilityCurve


class GraphingService:
    """Service for creating Plotly charts of scans and curves."""

    COLORS = {
        'primary': '#007bff',
        'success': '#28a745',
        'warning': '#ffc107',
        'danger': '#dc3545',
        'info': '#17a2b8',
        'secondary': '#6c757d',
    }

    AXIS_LABELS = {
        ScanParameter.PHI: "φ (rad)",
        ScanParameter.PHI_P: "φ_p (rad)",
        ScanParameter.TAU: "τ",
    }

    @staticmethod
    def _layout(fig: go.Figure, title: str, x_label: str, y_label: str, y_range: Optional[list] = None) -> str:
        fig.update_layout(
            title=title,
            xaxis_title=x_label,
            yaxis_title=y_label,
            template='plotly_white',
            height=400,
            margin=dict(l=50, r=50, t=50, b=50),
            hovermode='x unified',
            hoverlabel=dict(
                bgcolor="white",
                font_size=14,
                font_family="Arial",
                font_color="#333",
                bordercolor="#ddd"
            )
        )
        if y_range is not None:
            fig.update_yaxes(range=y_range)
        return fig.to_html(include_plotlyjs='cdn', div_id=None, config={'displayModeBar': False})

    @staticmethod
    def create_scan_chart(result: ScanResult, title: str, oracle: Optional[ScanResult] = None) -> str:
        """
        Rates over the scan grid, with the closed-form reference dashed and
        oracle rates as markers when given.
        """
        if len(result) == 0:
            return GraphingService._create_no_data_chart(title)

        fig = go.Figure()
        fig.add_trace(go.Scatter(
            x=list(result.grid),
            y=list(result.rates),
            mode='lines',
            name='engine',
            line=dict(color=GraphingService.COLORS['primary'], width=3),
            hovertemplate='R = %{y:.6g}<extra></extra>'
        ))
        if result.analytic is not None:
            fig.add_trace(go.Scatter(
                x=list(result.grid),
                y=list(result.analytic),
                mode='lines',
                name='closed form',
                line=dict(color=GraphingService.COLORS['secondary'], width=2, dash='dash'),
            ))
        if oracle is not None:
            fig.add_trace(go.Scatter(
                x=list(oracle.grid),
                y=list(oracle.rates),
                mode='markers',
                name='oracle',
                marker=dict(color=GraphingService.COLORS['danger'], size=7),
            ))

        y_label = "coincidence rate" if result.metadata.get('coincidence') else "count rate"
        return GraphingService._layout(fig, title, GraphingService.AXIS_LABELS[result.parameter], y_label)

    @staticmethod
    def create_visibility_chart(curve: VisibilityCurve, title: str) -> str:
        """Visibility points against τ or n, with the reference law when there is one."""
        if not curve.points:
            return GraphingService._create_no_data_chart(title)

        fig = go.Figure(data=[
            go.Scatter(
                x=list(curve.xs),
                y=list(curve.visibilities),
                mode='lines+markers',
                name='computed',
                line=dict(color=GraphingService.COLORS['info'], width=3),
                marker=dict(size=8),
            )
        ])
        references = [p.reference for p in curve.points]
        if all(r is not None for r in references):
            fig.add_trace(go.Scatter(
                x=list(curve.xs),
                y=references,
                mode='lines',
                name=curve.law or 'reference',
                line=dict(color=GraphingService.COLORS['secondary'], width=2, dash='dash'),
            ))
        for name, values in curve.metadata.get('candidate_laws', {}).items():
            fig.add_trace(go.Scatter(x=list(curve.xs), y=list(values), mode='lines', name=name,
                                     line=dict(width=1, dash='dot')))

        x_label = "τ" if curve.variable == 'tau' else "n = |α|²"
        return GraphingService._layout(fig, title, x_label, "visibility", y_range=[0, 1.05])

    @staticmethod
    def create_locking_chart(trajectories: Sequence[Trajectory], title: str = "Phase locking") -> str:
        """Δθ against z for an ensemble, with the ±π/2 lock values marked."""
        if not trajectories:
            return GraphingService._create_no_data_chart(title)

        fig = go.Figure()
        for k, trajectory in enumerate(trajectories):
            fig.add_trace(go.Scatter(
                x=list(trajectory.z),
                y=list(trajectory.delta_theta),
                mode='lines',
                name=f"run {k}",
                line=dict(width=1.5),
                showlegend=False,
            ))
        for value, color in ((math.pi / 2, 'success'), (-math.pi / 2, 'warning')):
            fig.add_hline(y=value, line_dash='dash', line_color=GraphingService.COLORS[color])
        return GraphingService._layout(fig, title, "z (1/κ)", "Δθ (rad)", y_range=[-math.pi, math.pi])

    @staticmethod
    def _create_no_data_chart(title: str) -> str:
        """Placeholder chart when there is nothing to plot."""
        fig = go.Figure()
        fig.add_annotation(
            text="No data available",
            xref="paper",
            yref="paper",
            x=0.5,
            y=0.5,
            showarrow=False,
            font=dict(size=16, color="gray")
        )
        fig.update_layout(
            title=title,
            template='plotly_white',
            height=400,
            xaxis=dict(visible=False),
            yaxis=dict(visible=False)
        )
        return fig.to_html(include_plotlyjs='cdn', div_id=None, config={'displayModeBar': False})
