from edge_ghost.artifacts.writer import ArtifactWriter

__all__ = ["ArtifactWriter"]
