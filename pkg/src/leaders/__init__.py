"""p-leaders, sup-leaders and (p, s)-leaders."""
